use alloc::vec;
use alloc::vec::Vec;

use super::{Formula, Kind, Lang};

/// Which leaves and unary connectives [`formulas`] may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature<'a> {
    pub lang: Lang,
    pub atoms: &'a [&'a str],
    /// Whether `1` and `0` are leaves.
    pub constants: bool,
    /// Whether `^#` is used (single-type only).
    pub dual_star: bool,
}

/// Every well-typed formula of depth at most `max_depth` over `sig`, by
/// increasing depth; within one depth, leaves, then `+`, `.`, then unary
/// connectives, each in the order of their arguments.
pub fn formulas(sig: &Signature<'_>, max_depth: usize) -> Vec<Formula> {
    // by_depth[d] holds the formulas of depth exactly d + 1
    let mut by_depth: Vec<Vec<Formula>> = Vec::new();
    for d in 0..max_depth {
        let mut layer = Vec::new();
        if d == 0 {
            layer.extend(sig.atoms.iter().map(|a| Formula::atom(*a)));
            if sig.constants {
                layer.push(Formula::One);
                layer.push(Formula::Zero);
            }
        } else {
            let below: Vec<&Formula> =
                by_depth.iter().flatten().filter(|f| f.kind() == Kind::General).collect();
            let top = &by_depth[d - 1];
            for op in [Formula::union as fn(Formula, Formula) -> Formula, Formula::comp] {
                for &x in &below {
                    for &y in &below {
                        if top.contains(x) || top.contains(y) {
                            layer.push(op(x.clone(), y.clone()));
                        }
                    }
                }
            }
            type Unary = (fn(Formula) -> Formula, Kind);
            let unary: Vec<Unary> = match sig.lang {
                Lang::SingleType if sig.dual_star => {
                    vec![(Formula::star, Kind::General), (Formula::dual_star, Kind::General)]
                }
                Lang::SingleType => vec![(Formula::star, Kind::General)],
                Lang::MultiType => vec![
                    (Formula::boxf, Kind::Special),
                    (Formula::fdia, Kind::General),
                    (Formula::bbox, Kind::General),
                ],
            };
            for (op, arg) in unary {
                for x in top.iter().filter(|f| f.kind() == arg) {
                    layer.push(op(x.clone()));
                }
            }
        }
        by_depth.push(layer);
    }
    by_depth.into_iter().flatten().collect()
}

/// All pairs `(x, y)` from `fs` with `x` and `y` of the same type.
pub fn same_kind_pairs(fs: &[Formula]) -> Vec<(Formula, Formula)> {
    let mut out = Vec::new();
    for x in fs {
        for y in fs.iter().filter(|y| y.kind() == x.kind()) {
            out.push((x.clone(), y.clone()));
        }
    }
    out
}
