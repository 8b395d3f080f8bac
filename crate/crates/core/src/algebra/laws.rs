use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use super::hetero::lift;
use super::FiniteAlgebra;

/// Violations of the closure, interior, retraction, range and sufficiency
/// laws for the star and dual star tables of `m`, one line each.
pub fn closure_law_violations(m: &FiniteAlgebra) -> Vec<String> {
    let mut out = Vec::new();
    let n = m.size;
    let st = |a| m.star(a);
    for a in 0..n {
        if !m.leq(a, st(a)) {
            out.push(format!("a <= a* fails at {a}"));
        }
        if st(st(a)) != st(a) {
            out.push(format!("a** = a* fails at {a}"));
        }
        for b in 0..n {
            if m.leq(a, b) && !m.leq(st(a), st(b)) {
                out.push(format!("star not monotone at ({a},{b})"));
            }
            if m.leq(a, b) && m.is_special(b) && !m.leq(st(a), b) {
                out.push(format!("a* <= b fails for special b at ({a},{b})"));
            }
        }
    }
    let specials = m.specials();
    let mut range: Vec<usize> = (0..n).map(st).collect();
    range.sort_unstable();
    range.dedup();
    if range != specials {
        out.push(format!("Range(*) = {range:?} but specials = {specials:?}"));
    }
    if let Some(t) = &m.dstar {
        let mut drange: Vec<usize> = t.iter().flatten().copied().collect();
        drange.sort_unstable();
        drange.dedup();
        if drange != specials {
            out.push(format!("Range(dstar) = {drange:?} but specials = {specials:?}"));
        }
        for a in 0..n {
            if let Some(d) = t[a] {
                if !m.leq(d, a) {
                    out.push(format!("a# <= a fails at {a}"));
                }
                if t[d] != Some(d) {
                    out.push(format!("a## = a# fails at {a}"));
                }
            }
        }
    }
    match lift(m) {
        Err(e) => out.push(format!("lift failed: {e}")),
        Ok(h) => {
            for xi in 0..h.special.size {
                if h.gamma(h.embed(xi)) != xi {
                    out.push(format!("gamma(e(xi)) = xi fails at {xi}"));
                }
                if h.iota.is_some() && h.iota(h.embed(xi)) != Some(xi) {
                    out.push(format!("iota(e(xi)) = xi fails at {xi}"));
                }
            }
        }
    }
    out
}
