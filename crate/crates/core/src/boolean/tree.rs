use super::{influences, total_influence, BooleanFunction};
use crate::error::Result;

/// A decision tree over original coordinate indices.
#[derive(Debug, Clone)]
pub enum DecisionTree {
    Leaf {
        depth: usize,
        /// Largest single influence of the restricted function at this leaf.
        max_influence: f64,
        /// Total influence of the restricted function at this leaf.
        influence_sum: f64,
    },
    Split {
        coord: usize,
        depth: usize,
        minus: Box<DecisionTree>,
        plus: Box<DecisionTree>,
    },
}

#[derive(Debug, Clone, Copy)]
pub struct TreeStats {
    pub depth: usize,
    pub depth_bound: usize,
    /// Probability of reaching a leaf that still has a coordinate of
    /// influence ≥ τ (leaves cut off by the depth budget).
    pub bad_leaf_mass: f64,
    pub leaves: usize,
    pub ok: bool,
}

/// Splits on the max-influence variable until every leaf has all influences
/// below `tau` or the depth budget `⌈2 + I(f)/(τ·ε)⌉` is hit; the mass of
/// leaves that still exceed `tau` is then at most `epsilon`.
pub fn decision_tree_regularize(
    f: &BooleanFunction,
    tau: f64,
    epsilon: f64,
) -> Result<(DecisionTree, TreeStats)> {
    if tau <= 0.0 || epsilon <= 0.0 {
        return Err(crate::error::Error::ParameterDomain(
            "tau and epsilon must be positive".into(),
        ));
    }
    let total = total_influence(f);
    // The construction stops one level below the ceiling bound.
    let depth_bound = (2.0 + total / (tau * epsilon)).ceil() as usize;
    let cut = 1 + (total / (tau * epsilon)).ceil() as usize;
    let live: Vec<usize> = (0..f.n() as usize).collect();
    let mut stats = TreeStats {
        depth: 0,
        depth_bound,
        bad_leaf_mass: 0.0,
        leaves: 0,
        ok: false,
    };
    let tree = build(f, &live, 0, cut, tau, &mut stats)?;
    stats.ok = stats.bad_leaf_mass <= epsilon + 1e-12 && stats.depth <= depth_bound;
    Ok((tree, stats))
}

fn build(
    f: &BooleanFunction,
    live: &[usize],
    depth: usize,
    cut: usize,
    tau: f64,
    stats: &mut TreeStats,
) -> Result<DecisionTree> {
    let infl = influences(f);
    let (best, &max_inf) = infl
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .expect("arity ≥ 1");
    if max_inf < tau || depth >= cut {
        stats.depth = stats.depth.max(depth);
        stats.leaves += 1;
        if max_inf >= tau {
            stats.bad_leaf_mass += 0.5f64.powi(depth as i32);
        }
        return Ok(DecisionTree::Leaf {
            depth,
            max_influence: max_inf,
            influence_sum: infl.iter().sum(),
        });
    }
    let coord = live[best];
    if f.n() == 1 {
        // splitting the last variable leaves two constants
        stats.depth = stats.depth.max(depth + 1);
        stats.leaves += 2;
        let leaf = |d| DecisionTree::Leaf {
            depth: d,
            max_influence: 0.0,
            influence_sum: 0.0,
        };
        return Ok(DecisionTree::Split {
            coord,
            depth,
            minus: Box::new(leaf(depth + 1)),
            plus: Box::new(leaf(depth + 1)),
        });
    }
    let mut next_live = live.to_vec();
    next_live.remove(best);
    let minus = build(
        &f.restrict(best, false)?,
        &next_live,
        depth + 1,
        cut,
        tau,
        stats,
    )?;
    let plus = build(
        &f.restrict(best, true)?,
        &next_live,
        depth + 1,
        cut,
        tau,
        stats,
    )?;
    Ok(DecisionTree::Split {
        coord,
        depth,
        minus: Box::new(minus),
        plus: Box::new(plus),
    })
}
