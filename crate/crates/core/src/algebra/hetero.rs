use alloc::vec::Vec;

use super::{AlgebraError, FiniteAlgebra};

/// A finite join-semilattice with bottom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semilattice {
    pub size: usize,
    pub join: Vec<usize>,
    pub zero: usize,
}

impl Semilattice {
    #[inline]
    pub fn j(&self, x: usize, y: usize) -> usize {
        self.join[x * self.size + y]
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.j(x, y) == y
    }
}

/// `Range(*)` with `ξ ⊔ χ = γ(e(ξ) ∪ e(χ))` and `0_s = γ(0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Kernel {
    pub special: Semilattice,
    /// `e`: kernel index to element, in increasing element order.
    pub embed: Vec<usize>,
    /// `γ`: element to kernel index of its star.
    pub gamma: Vec<usize>,
}

/// General part `A`, special part `S`, and the maps between them.
/// `⊗₁` and `⊗₂` are derived from `e` and composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeteroAlgebra {
    /// Star and dual star tables are always `None` here.
    pub general: FiniteAlgebra,
    pub special: Semilattice,
    pub gamma: Vec<usize>,
    pub embed: Vec<usize>,
    /// `None` entries lie outside the domain of a guarded `ι`.
    pub iota: Option<Vec<Option<usize>>>,
}

impl HeteroAlgebra {
    pub fn gamma(&self, a: usize) -> usize {
        self.gamma[a]
    }

    pub fn embed(&self, xi: usize) -> usize {
        self.embed[xi]
    }

    pub fn iota(&self, a: usize) -> Option<usize> {
        self.iota.as_ref().and_then(|t| t[a])
    }

    /// `ξ ⊗₁ α = e(ξ) · α`.
    pub fn tensor1(&self, xi: usize, a: usize) -> usize {
        self.general.c(self.embed[xi], a)
    }

    /// `α ⊗₂ ξ = α · e(ξ)`.
    pub fn tensor2(&self, a: usize, xi: usize) -> usize {
        self.general.c(a, self.embed[xi])
    }
}

fn index_of(embed: &[usize], a: usize) -> Option<usize> {
    embed.binary_search(&a).ok()
}

pub fn kernel(m: &FiniteAlgebra) -> Kernel {
    let mut embed: Vec<usize> = m.elements().map(|a| m.star(a)).collect();
    embed.sort_unstable();
    embed.dedup();
    let idx = |a: usize| index_of(&embed, m.star(a)).expect("star values lie in the kernel");
    let gamma: Vec<usize> = m.elements().map(idx).collect();
    let k = embed.len();
    let mut join = Vec::with_capacity(k * k);
    for &x in &embed {
        for &y in &embed {
            join.push(idx(m.j(x, y)));
        }
    }
    let zero = idx(m.zero);
    Kernel { special: Semilattice { size: k, join, zero }, embed, gamma }
}

/// `K⁺`: the star-free reduct with the kernel of `*`, and `ι` read off `⋆`
/// when present.
pub fn lift(m: &FiniteAlgebra) -> Result<HeteroAlgebra, AlgebraError> {
    let ker = kernel(m);
    let iota = match &m.dstar {
        None => None,
        Some(t) => Some(
            t.iter()
                .map(|d| match d {
                    None => Ok(None),
                    Some(b) => {
                        index_of(&ker.embed, *b).map(Some).ok_or(AlgebraError::NotInKernel(*b))
                    }
                })
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    Ok(HeteroAlgebra {
        general: m.reduct(),
        special: ker.special,
        gamma: ker.gamma,
        embed: ker.embed,
        iota,
    })
}

/// `H₊` with `α* = e(γ(α))` and, when `ι` is present, `α⋆ = e(ι(α))`.
pub fn lower(h: &HeteroAlgebra) -> Result<FiniteAlgebra, AlgebraError> {
    if let Some(t) = &h.iota {
        if let Some(a) = t.iter().position(Option::is_none) {
            return Err(AlgebraError::IotaPartial(a));
        }
    }
    Ok(lower_partial(h))
}

/// [`lower`] keeping undefined `ι` entries as undefined `⋆` entries.
pub fn lower_partial(h: &HeteroAlgebra) -> FiniteAlgebra {
    let mut m = h.general.reduct();
    m.star = Some(h.gamma.iter().map(|&x| h.embed[x]).collect());
    m.dstar = h.iota.as_ref().map(|t| t.iter().map(|x| x.map(|xi| h.embed[xi])).collect());
    m
}

/// `K ≅ (K⁺)₊`, with the identity on the carrier.
pub fn roundtrip_check(m: &FiniteAlgebra) -> bool {
    let m = if m.star.is_some() { m.clone() } else { m.clone().with_star() };
    match lift(&m) {
        Ok(h) => lower_partial(&h) == m,
        Err(_) => false,
    }
}

/// `H ≅ (H₊)⁺`: identity on `A`, and on `S` the map sending `ξ` to the
/// kernel element `e(ξ)`, which must be a join-semilattice isomorphism
/// commuting with `γ`, `e` and `ι`.
pub fn roundtrip_check_h(h: &HeteroAlgebra) -> bool {
    let Ok(back) = lift(&lower_partial(h)) else {
        return false;
    };
    if back.general != h.general || back.special.size != h.special.size {
        return false;
    }
    let iso: Option<Vec<usize>> = h.embed.iter().map(|&a| index_of(&back.embed, a)).collect();
    let Some(iso) = iso else {
        return false;
    };
    let k = h.special.size;
    let mut hit = alloc::vec![false; k];
    for &x in &iso {
        hit[x] = true;
    }
    if hit.contains(&false) {
        return false;
    }
    let joins =
        (0..k).all(|x| (0..k).all(|y| iso[h.special.j(x, y)] == back.special.j(iso[x], iso[y])));
    let zero = iso[h.special.zero] == back.special.zero;
    let gamma = h.general.elements().all(|a| back.gamma[a] == iso[h.gamma[a]]);
    let embed = (0..k).all(|x| back.embed[iso[x]] == h.embed[x]);
    let iota = match (&h.iota, &back.iota) {
        (None, None) => true,
        (Some(t), Some(u)) => t.iter().zip(u).all(|(x, y)| x.map(|x| iso[x]) == *y),
        _ => false,
    };
    joins && zero && gamma && embed && iota
}

/// Two kernel elements whose kernel join differs from their join in `K`,
/// as `(ξ, χ, ξ ⊔ χ, ξ ∪ χ)` in carrier indices.
pub fn kernel_join_witness(m: &FiniteAlgebra) -> Option<(usize, usize, usize, usize)> {
    let ker = kernel(m);
    let e = &ker.embed;
    for x in 0..e.len() {
        for y in 0..e.len() {
            let kj = e[ker.special.j(x, y)];
            let j = m.j(e[x], e[y]);
            if kj != j {
                return Some((e[x], e[y], kj, j));
            }
        }
    }
    None
}
