use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use super::validate::validate;
use super::{AlgebraError, FiniteAlgebra, Mode};

/// Largest carrier [`enumerate`] accepts.
pub const SIZE_CAP: usize = 4;

/// Every model of size `1..=max_size` up to isomorphism, in order of size
/// and then of canonical table encoding. Element `0` is the bottom and
/// element `1` the unit (they coincide only in the singleton).
///
/// * `Kleene`: star tables computed from powers.
/// * `MeasurableLiteral`: each Kleene model with every total `⋆` map that
///   passes the measurable axioms.
/// * `MeasurableGuarded`: each Kleene model with its guarded `⋆`.
pub fn enumerate(max_size: usize, mode: Mode) -> Result<Vec<FiniteAlgebra>, AlgebraError> {
    if max_size > SIZE_CAP {
        return Err(AlgebraError::SizeCap(max_size));
    }
    let mut out = Vec::new();
    for n in 1..=max_size {
        for m in kleene_models(n) {
            match mode {
                Mode::Kleene => out.push(m),
                Mode::MeasurableGuarded => out.push(m.with_guarded_dstar()),
                Mode::MeasurableLiteral => out.extend(literal_dual_stars(&m)),
            }
        }
    }
    Ok(out)
}

fn literal_dual_stars(m: &FiniteAlgebra) -> Vec<FiniteAlgebra> {
    let n = m.size;
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    loop {
        let mut c = m.clone();
        c.dstar = Some(map.iter().map(|&x| Some(x)).collect());
        if validate(&c, Mode::MeasurableLiteral).passed() {
            out.push(c);
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            map[i] += 1;
            if map[i] < n {
                break;
            }
            map[i] = 0;
        }
    }
}

fn kleene_models(n: usize) -> Vec<FiniteAlgebra> {
    if n == 1 {
        return vec![FiniteAlgebra::new(1, vec![0], vec![0], 0, 0).with_star()];
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let perms = permutations_fixing_0_1(n);
    for join in join_tables(n) {
        for comp in comp_tables(n, &join) {
            let key = canonical(n, &join, &comp, &perms);
            if seen.insert(key.clone()) {
                let (j, c) = key.split_at(n * n);
                out.push(FiniteAlgebra::new(n, j.to_vec(), c.to_vec(), 1, 0).with_star());
            }
        }
    }
    out.sort_by(|a, b| (&a.join, &a.comp).cmp(&(&b.join, &b.comp)));
    out
}

/// Join tables of partial orders on `0..n` with bottom `0` in which every
/// pair has a least upper bound.
fn join_tables(n: usize) -> Vec<Vec<usize>> {
    let pairs: Vec<(usize, usize)> =
        (1..n).flat_map(|a| (1..n).filter(move |&b| b != a).map(move |b| (a, b))).collect();
    let mut out = Vec::new();
    for bits in 0u32..(1 << pairs.len()) {
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
            le[a] = true;
        }
        for (i, &(a, b)) in pairs.iter().enumerate() {
            if bits >> i & 1 == 1 {
                le[a * n + b] = true;
            }
        }
        let antisym = (0..n).all(|a| (0..n).all(|b| a == b || !(le[a * n + b] && le[b * n + a])));
        let trans = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| !(le[a * n + b] && le[b * n + c]) || le[a * n + c]))
        });
        if !antisym || !trans {
            continue;
        }
        let mut join = vec![0; n * n];
        let mut ok = true;
        'pairs: for a in 0..n {
            for b in 0..n {
                let ubs: Vec<usize> = (0..n).filter(|&u| le[a * n + u] && le[b * n + u]).collect();
                match ubs.iter().find(|&&u| ubs.iter().all(|&v| le[u * n + v])) {
                    Some(&u) => join[a * n + b] = u,
                    None => {
                        ok = false;
                        break 'pairs;
                    }
                }
            }
        }
        if ok {
            out.push(join);
        }
    }
    out
}

/// Composition tables with unit `1` and annihilator `0` that are
/// associative and distribute over `join` on both sides.
fn comp_tables(n: usize, join: &[usize]) -> Vec<Vec<usize>> {
    let free: Vec<(usize, usize)> = (2..n).flat_map(|a| (2..n).map(move |b| (a, b))).collect();
    let mut base = vec![0; n * n];
    for a in 0..n {
        base[n + a] = a;
        base[a * n + 1] = a;
    }
    for a in 0..n {
        base[a] = 0;
        base[a * n] = 0;
    }
    let mut out = Vec::new();
    let mut vals = vec![0usize; free.len()];
    loop {
        let mut c = base.clone();
        for (&(a, b), &v) in free.iter().zip(&vals) {
            c[a * n + b] = v;
        }
        let assoc = (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|d| c[c[a * n + b] * n + d] == c[a * n + c[b * n + d]]))
        });
        let dist = (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|d| {
                    c[a * n + join[b * n + d]] == join[c[a * n + b] * n + c[a * n + d]]
                        && c[join[b * n + d] * n + a] == join[c[b * n + a] * n + c[d * n + a]]
                })
            })
        });
        if assoc && dist {
            out.push(c);
        }
        let mut i = free.len();
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            vals[i] += 1;
            if vals[i] < n {
                break;
            }
            vals[i] = 0;
        }
    }
}

fn permutations_fixing_0_1(n: usize) -> Vec<Vec<usize>> {
    fn go(rest: &mut Vec<usize>, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest.is_empty() {
            out.push(acc.clone());
            return;
        }
        for i in 0..rest.len() {
            let x = rest.remove(i);
            acc.push(x);
            go(rest, acc, out);
            acc.pop();
            rest.insert(i, x);
        }
    }
    let mut out = Vec::new();
    let mut acc = vec![0, 1];
    go(&mut (2..n).collect(), &mut acc, &mut out);
    out
}

/// Lexicographically least `join ++ comp` encoding over the permutations.
fn canonical(n: usize, join: &[usize], comp: &[usize], perms: &[Vec<usize>]) -> Vec<usize> {
    perms
        .iter()
        .map(|p| {
            let mut key = vec![0; 2 * n * n];
            for a in 0..n {
                for b in 0..n {
                    key[p[a] * n + p[b]] = p[join[a * n + b]];
                    key[n * n + p[a] * n + p[b]] = p[comp[a * n + b]];
                }
            }
            key
        })
        .min()
        .expect("at least the identity permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{validate, Mode};

    #[test]
    fn counts_up_to_three() {
        let ms = enumerate(3, Mode::Kleene).unwrap();
        let sizes: Vec<usize> = ms.iter().map(|m| m.size).collect();
        assert_eq!(sizes, [1, 2, 3, 3, 3]);
        for m in &ms {
            assert!(validate(m, Mode::Kleene).passed());
        }
        assert_eq!(ms[1], FiniteAlgebra::b2());
    }

    #[test]
    fn literal_collapse() {
        let ms = enumerate(3, Mode::MeasurableLiteral).unwrap();
        assert_eq!(ms.len(), 1);
        assert_eq!(ms[0].size, 1);
    }

    #[test]
    fn cap() {
        assert_eq!(enumerate(5, Mode::Kleene), Err(AlgebraError::SizeCap(5)));
    }
}
