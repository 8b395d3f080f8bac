use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::hetero::HeteroAlgebra;
use super::{FiniteAlgebra, Mode};

/// Outcome for one axiom: `None` means it holds, otherwise the first
/// violating tuple in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomCheck {
    pub axiom: &'static str,
    pub witness: Option<Vec<usize>>,
}

impl AxiomCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<AxiomCheck>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(AxiomCheck::passed)
    }

    pub fn get(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomCheck> {
        self.checks.iter().filter(|c| !c.passed())
    }

    fn add(&mut self, axiom: &'static str, witness: Option<Vec<usize>>) {
        self.checks.push(AxiomCheck { axiom, witness });
    }
}

/// One `PASS <axiom>` or `FAIL <axiom> <witness>` line per check.
impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            match &c.witness {
                None => writeln!(f, "PASS {}", c.axiom)?,
                Some(w) => {
                    let w: Vec<String> = w.iter().map(|x| alloc::format!("{x}")).collect();
                    writeln!(f, "FAIL {} ({})", c.axiom, w.join(","))?
                }
            }
        }
        Ok(())
    }
}

fn find1(n: usize, p: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    (0..n).find(|&a| !p(a)).map(|a| vec![a])
}

fn find2(n: usize, p: impl Fn(usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            if !p(a, b) {
                return Some(vec![a, b]);
            }
        }
    }
    None
}

fn find3(n: usize, p: impl Fn(usize, usize, usize) -> bool) -> Option<Vec<usize>> {
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !p(a, b, c) {
                    return Some(vec![a, b, c]);
                }
            }
        }
    }
    None
}

/// First tuple in the box `dims[0] x dims[1] x ...` violating `p`.
fn find_in(dims: &[usize], p: impl Fn(&[usize]) -> bool) -> Option<Vec<usize>> {
    if dims.contains(&0) {
        return None;
    }
    let mut v = vec![0; dims.len()];
    loop {
        if !p(&v) {
            return Some(v);
        }
        let mut i = dims.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < dims[i] {
                break;
            }
            v[i] = 0;
        }
    }
}

fn tables_in_range(m: &FiniteAlgebra) -> bool {
    let n = m.size;
    n > 0
        && m.join.len() == n * n
        && m.comp.len() == n * n
        && m.join.iter().chain(&m.comp).all(|&x| x < n)
        && m.one < n
        && m.zero < n
        && m.star.as_ref().is_none_or(|s| s.len() == n && s.iter().all(|&x| x < n))
        && m.dstar.as_ref().is_none_or(|s| s.len() == n && s.iter().flatten().all(|&x| x < n))
}

/// Join-semilattice with bottom, monoid, distributivity, annihilation.
fn check_semiring(m: &FiniteAlgebra) -> (Option<Vec<usize>>, Option<Vec<usize>>) {
    let n = m.size;
    let w1 = find3(n, |a, b, c| m.j(m.j(a, b), c) == m.j(a, m.j(b, c)))
        .or_else(|| find2(n, |a, b| m.j(a, b) == m.j(b, a)))
        .or_else(|| find1(n, |a| m.j(a, a) == a && m.j(m.zero, a) == a));
    let w2 = find3(n, |a, b, c| m.c(m.c(a, b), c) == m.c(a, m.c(b, c)))
        .or_else(|| find1(n, |a| m.c(m.one, a) == a && m.c(a, m.one) == a))
        .or_else(|| {
            find3(n, |a, b, c| {
                m.c(a, m.j(b, c)) == m.j(m.c(a, b), m.c(a, c))
                    && m.c(m.j(b, c), a) == m.j(m.c(b, a), m.c(c, a))
            })
        })
        .or_else(|| find1(n, |a| m.c(m.zero, a) == m.zero && m.c(a, m.zero) == m.zero));
    (w1, w2)
}

/// Checks the axioms of `mode` exhaustively. A missing star table is
/// computed; in guarded mode a missing dual star table is computed as well.
/// Guarded measurable axioms quantify only over the domain of `⋆`.
pub fn validate(m: &FiniteAlgebra, mode: Mode) -> Report {
    let mut r = Report::default();
    if !tables_in_range(m) {
        r.add("tables", Some(vec![]));
        return r;
    }
    let (k1, k2) = check_semiring(m);
    r.add("K1", k1);
    r.add("K2", k2);
    let n = m.size;
    let st = |a: usize| m.star(a);
    r.add(
        "K3",
        find1(n, |a| {
            let s = st(a);
            let one_le = |x| m.leq(m.j(m.one, x), s);
            one_le(m.c(a, s)) && one_le(m.c(s, a)) && one_le(m.c(s, s))
        }),
    );
    r.add("K4", find2(n, |a, b| !m.leq(m.c(a, b), b) || m.leq(m.c(st(a), b), b)));
    r.add("K5", find2(n, |a, b| !m.leq(m.c(b, a), b) || m.leq(m.c(b, st(a)), b)));
    r.add("K6", find1(n, |a| st(a) == m.compute_star(a)));
    if mode == Mode::Kleene {
        return r;
    }

    let guarded;
    let m = if mode == Mode::MeasurableGuarded && m.dstar.is_none() {
        guarded = m.clone().with_guarded_dstar();
        &guarded
    } else {
        m
    };
    let Some(table) = &m.dstar else {
        r.add("MK", Some(vec![]));
        return r;
    };
    let total = table.iter().all(Option::is_some);
    if mode == Mode::MeasurableLiteral && !total {
        let a = table.iter().position(Option::is_none).unwrap_or(0);
        r.add("MK", Some(vec![a]));
        return r;
    }
    // in guarded mode a failure at an undefined argument is not a violation
    let ds = |a: usize| table[a];
    let defined = |a: usize| ds(a).is_some();
    let d = |a: usize| ds(a).unwrap_or(a);

    r.add("MK2", find2(n, |a, b| !(defined(a) && defined(b) && m.leq(a, b)) || m.leq(d(a), d(b))));
    r.add("MK3", find1(n, |a| !defined(a) || (m.leq(m.one, d(a)) && m.leq(m.c(d(a), d(a)), d(a)))));
    r.add(
        "MK4",
        find1(n, |a| !defined(a) || (m.leq(d(a), a) && (!defined(d(a)) || m.leq(d(a), d(d(a)))))),
    );
    r.add(
        "MK5",
        find2(n, |a, b| !defined(a) || !(m.leq(b, a) && m.is_special(b)) || m.leq(b, d(a))),
    );
    r.add("MK3/MK4", find1(n, |a| !defined(a) || (m.leq(m.one, d(a)) && m.leq(d(a), a))));
    r
}

/// Checks the heterogeneous axioms, and the measurable ones when `ι` is
/// present. Where `ι` is partial the measurable axioms quantify over its
/// domain.
pub fn validate_hetero(h: &HeteroAlgebra) -> Report {
    let mut r = Report::default();
    let a = &h.general;
    let s = &h.special;
    let n = a.size;
    let k = s.size;
    if !tables_in_range(a)
        || h.gamma.len() != n
        || h.embed.len() != k
        || h.gamma.iter().any(|&x| x >= k)
        || h.embed.iter().any(|&x| x >= n)
    {
        r.add("tables", Some(vec![]));
        return r;
    }
    let (k1, k2) = check_semiring(a);
    r.add("H1", k1.or(k2));
    let sj = |x: usize, y: usize| s.join[x * k + y];
    let sleq = |x: usize, y: usize| sj(x, y) == y;
    let h2 = find3(k, |x, y, z| sj(sj(x, y), z) == sj(x, sj(y, z)))
        .or_else(|| find2(k, |x, y| sj(x, y) == sj(y, x)))
        .or_else(|| find1(k, |x| sj(x, x) == x && sj(s.zero, x) == x));
    r.add("H2", h2);

    let g = |x: usize| h.gamma[x];
    let e = |x: usize| h.embed[x];
    let t1 = |xi: usize, al: usize| a.c(e(xi), al);
    let t2 = |al: usize, xi: usize| a.c(al, e(xi));
    // the unit of the second coordinate of ⊗₁ is read as γ(1)
    let unit_s = g(a.one);
    let h3 = find_in(&[k, n, n], |v| {
        let (xi, y, z) = (v[0], v[1], v[2]);
        t1(xi, a.j(y, z)) == a.j(t1(xi, y), t1(xi, z))
            && t2(a.j(y, z), xi) == a.j(t2(y, xi), t2(z, xi))
    })
    .or_else(|| {
        find_in(&[k, k, n], |v| {
            let (p, q, z) = (v[0], v[1], v[2]);
            !sleq(p, q) || (a.leq(t1(p, z), t1(q, z)) && a.leq(t2(z, p), t2(z, q)))
        })
    })
    .or_else(|| find1(n, |x| t1(unit_s, x) == x && t2(x, unit_s) == x));
    r.add("H3", h3);

    let h4 = find_in(&[n, k], |v| sleq(g(v[0]), v[1]) == a.leq(v[0], e(v[1])))
        .or_else(|| find1(k, |xi| g(e(xi)) == xi));
    r.add("H4", h4);
    r.add("H5", find1(k, |xi| a.leq(a.one, e(xi)) && a.leq(a.c(e(xi), e(xi)), e(xi))));
    r.add(
        "H6",
        find2(n, |x, b| {
            (!a.leq(a.c(x, b), b) || a.leq(t1(g(x), b), b))
                && (!a.leq(a.c(b, x), b) || a.leq(t2(b, g(x)), b))
        }),
    );
    r.add("H7", find1(n, |x| e(g(x)) == a.compute_star(x)));

    let Some(iota) = &h.iota else {
        return r;
    };
    if iota.len() != n || iota.iter().flatten().any(|&x| x >= k) {
        r.add("HM4", Some(vec![]));
        return r;
    }
    let i = |x: usize| iota[x];
    let hm4 = find_in(&[k, n], |v| i(v[1]).is_none_or(|ix| a.leq(e(v[0]), v[1]) == sleq(v[0], ix)))
        .or_else(|| find1(k, |xi| i(e(xi)) == Some(xi)));
    r.add("HM4", hm4);
    r.add("HM6", find1(n, |b| !a.is_special(b) || i(b).is_none_or(|ib| sleq(g(b), ib))));
    r
}
