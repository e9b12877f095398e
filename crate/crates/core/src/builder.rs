//! Recursive construction of a `⌈log₂ d⌉`-balanced sequence with a
//! prescribed frequency vector.
//!
//! The letters are split into the first `⌈d/2⌉` and the remaining ones.
//! With `α` the total frequency of the first block, each block is
//! normalized to sum to one and built recursively; the two results colour
//! a mechanical word of slope `α`. A single letter `i` yields `i^ω`.
//! Each level adds at most one to the balance constant and the depth is
//! `⌈log₂ d⌉`.

use crate::colouring::colour;
use crate::error::{Error, Result};
use crate::exact_arith::FieldElement;
use crate::mechanical::{mechanical_stream, MechanicalParams};
use crate::sequences::{Alphabet, BoxedStream, FrequencyVector, PeriodicStream, Symbol};

#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum PlanNode {
    Leaf(Symbol),
    Split {
        /// Frequency of the left block within this node.
        alpha: FieldElement,
        mechanical: MechanicalParams,
        /// Normalized frequencies of each block.
        left_freqs: FrequencyVector,
        right_freqs: FrequencyVector,
        left: Box<PlanNode>,
        right: Box<PlanNode>,
    },
}

impl PlanNode {
    pub fn depth(&self) -> usize {
        match self {
            PlanNode::Leaf(_) => 0,
            PlanNode::Split { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    pub fn leaves(&self) -> Vec<Symbol> {
        match self {
            PlanNode::Leaf(s) => vec![*s],
            PlanNode::Split { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
        }
    }

    /// Slopes of internal nodes in pre-order.
    pub fn alphas(&self) -> Vec<FieldElement> {
        match self {
            PlanNode::Leaf(_) => vec![],
            PlanNode::Split {
                alpha, left, right, ..
            } => {
                let mut v = vec![alpha.clone()];
                v.extend(left.alphas());
                v.extend(right.alphas());
                v
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct BuildPlan {
    freqs: FrequencyVector,
    root: PlanNode,
}

impl BuildPlan {
    pub fn root(&self) -> &PlanNode {
        &self.root
    }

    pub fn frequencies(&self) -> &FrequencyVector {
        &self.freqs
    }

    pub fn alphabet(&self) -> &Alphabet {
        self.freqs.alphabet()
    }
}

fn block(symbols: &[Symbol], freqs: &[FieldElement], mass: &FieldElement) -> Result<FrequencyVector> {
    let normalized = freqs
        .iter()
        .map(|f| f.checked_div(mass))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let total = normalized
        .iter()
        .try_fold(FieldElement::zero(), |acc, f| acc.checked_add(f))?;
    if total != FieldElement::one() {
        return Err(Error::Invariant(format!(
            "normalized block {symbols:?} sums to {total}"
        )));
    }
    FrequencyVector::new(Alphabet::new(symbols.to_vec())?, normalized)
}

fn plan_node(f: &FrequencyVector) -> Result<PlanNode> {
    let symbols = f.alphabet().symbols();
    if symbols.len() == 1 {
        return Ok(PlanNode::Leaf(symbols[0]));
    }
    let split = symbols.len().div_ceil(2);
    let entries = f.entries();
    let alpha = entries[..split]
        .iter()
        .try_fold(FieldElement::zero(), |acc, x| acc.checked_add(x))?;
    let rest = FieldElement::one().checked_sub(&alpha)?;
    let left_freqs = block(&symbols[..split], &entries[..split], &alpha)?;
    let right_freqs = block(&symbols[split..], &entries[split..], &rest)?;
    Ok(PlanNode::Split {
        mechanical: MechanicalParams::with_slope(alpha.clone())?,
        alpha,
        left: Box::new(plan_node(&left_freqs)?),
        right: Box::new(plan_node(&right_freqs)?),
        left_freqs,
        right_freqs,
    })
}

/// Recursion tree with exact slopes; validation happened when `f` was
/// constructed.
pub fn plan(f: &FrequencyVector) -> Result<BuildPlan> {
    Ok(BuildPlan {
        root: plan_node(f)?,
        freqs: f.clone(),
    })
}

fn node_stream(node: &PlanNode) -> BoxedStream {
    match node {
        PlanNode::Leaf(s) => Box::new(PeriodicStream::constant(*s)),
        PlanNode::Split {
            mechanical,
            left,
            right,
            ..
        } => Box::new(
            colour(mechanical_stream(mechanical), node_stream(left), node_stream(right))
                .expect("plan blocks are disjoint"),
        ),
    }
}

pub fn build_stream(p: &BuildPlan) -> BoxedStream {
    node_stream(&p.root)
}

/// `⌈log₂ d⌉`, the balance constant guaranteed for `d` letters.
pub fn certified_k(d: usize) -> Result<u32> {
    if d < 1 {
        return Err(Error::OutOfRange {
            name: "d",
            value: d,
            expected: "d >= 1".into(),
        });
    }
    Ok(usize::BITS - (d - 1).leading_zeros())
}
