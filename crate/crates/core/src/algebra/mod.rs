//! Finite Kleene algebras and their heterogeneous presentations, used as a
//! brute-force semantic oracle for the calculus.
//!
//! Elements are indices `0..size`. Binary operations are stored row-major:
//! `join[a * size + b]`.

mod enumerate;
mod eval;
mod hetero;
mod laws;
mod validate;

use alloc::vec;
use alloc::vec::Vec;

use thiserror::Error;

pub use enumerate::{enumerate, SIZE_CAP};
pub use eval::{
    check_rule_soundness, eval_formula, eval_single, eval_structure, mutated_rules,
    translation_invariance, valid, valid_single, Assignment, EvalError, Position, Soundness,
    Validity,
};
pub use hetero::{
    kernel, kernel_join_witness, lift, lower, lower_partial, roundtrip_check, roundtrip_check_h,
    HeteroAlgebra, Kernel, Semilattice,
};
pub use laws::closure_law_violations;
pub use validate::{validate, validate_hetero, AxiomCheck, Report};

/// Which axioms a model is checked against and how `⋆` is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    Kleene,
    /// `⋆` total and subject to the measurable axioms as stated.
    MeasurableLiteral,
    /// `⋆` defined only where a greatest special element below the argument
    /// exists.
    MeasurableGuarded,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Kleene => "kleene",
            Mode::MeasurableLiteral => "literal",
            Mode::MeasurableGuarded => "guarded",
        }
    }

    pub fn from_name(s: &str) -> Option<Mode> {
        Some(match s {
            "kleene" => Mode::Kleene,
            "literal" | "measurable-literal" => Mode::MeasurableLiteral,
            "guarded" | "measurable-guarded" => Mode::MeasurableGuarded,
            _ => return None,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("iota is undefined at element {0}")]
    IotaPartial(usize),
    #[error("model size {0} exceeds the enumeration cap")]
    SizeCap(usize),
    #[error("element {0} is not in the kernel")]
    NotInKernel(usize),
    #[error("model has no dual star")]
    NoDualStar,
}

/// A finite carrier with join and composition tables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    pub size: usize,
    pub join: Vec<usize>,
    pub comp: Vec<usize>,
    pub one: usize,
    pub zero: usize,
    pub star: Option<Vec<usize>>,
    /// `None` entries mark arguments outside the domain of a guarded `⋆`.
    pub dstar: Option<Vec<Option<usize>>>,
}

/// `α⁰, α¹, …` as a finite prefix followed by a repeating cycle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Powers {
    pub prefix: Vec<usize>,
    pub cycle: Vec<usize>,
}

impl Powers {
    /// `αⁿ`.
    pub fn nth(&self, n: usize) -> usize {
        if n < self.prefix.len() {
            self.prefix[n]
        } else {
            self.cycle[(n - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Every value taken by `αⁿ` for `n >= from`.
    pub fn values_from(&self, from: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.prefix.iter().skip(from).copied().collect();
        out.extend(&self.cycle);
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl FiniteAlgebra {
    /// A model without star tables.
    pub fn new(size: usize, join: Vec<usize>, comp: Vec<usize>, one: usize, zero: usize) -> Self {
        FiniteAlgebra { size, join, comp, one, zero, star: None, dstar: None }
    }

    pub fn elements(&self) -> core::ops::Range<usize> {
        0..self.size
    }

    #[inline]
    pub fn j(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn c(&self, a: usize, b: usize) -> usize {
        self.comp[a * self.size + b]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.j(a, b) == b
    }

    pub fn powers(&self, a: usize) -> Powers {
        let mut seen: Vec<usize> = Vec::new();
        let mut p = self.one;
        loop {
            if let Some(i) = seen.iter().position(|&x| x == p) {
                let cycle = seen.split_off(i);
                return Powers { prefix: seen, cycle };
            }
            seen.push(p);
            p = self.c(p, a);
        }
    }

    /// `⋃ αⁿ` over `n >= 0`, by iterating powers until one repeats.
    pub fn compute_star(&self, a: usize) -> usize {
        let p = self.powers(a);
        p.prefix.iter().chain(&p.cycle).fold(self.zero, |acc, &x| self.j(acc, x))
    }

    /// The stored star, or the computed one.
    pub fn star(&self, a: usize) -> usize {
        match &self.star {
            Some(t) => t[a],
            None => self.compute_star(a),
        }
    }

    pub fn dstar(&self, a: usize) -> Option<usize> {
        self.dstar.as_ref().and_then(|t| t[a])
    }

    /// Copy with the star table filled in by [`FiniteAlgebra::compute_star`].
    pub fn with_star(mut self) -> Self {
        self.star = Some(self.elements().map(|a| self.compute_star(a)).collect());
        self
    }

    /// Copy with the guarded dual star: the greatest special element below
    /// each argument, where one exists.
    pub fn with_guarded_dstar(mut self) -> Self {
        self.dstar = Some(self.elements().map(|a| self.guarded_dstar(a)).collect());
        self
    }

    /// `1 <= β` and `β·β <= β`.
    pub fn is_special(&self, b: usize) -> bool {
        self.leq(self.one, b) && self.leq(self.c(b, b), b)
    }

    pub fn specials(&self) -> Vec<usize> {
        self.elements().filter(|&b| self.is_special(b)).collect()
    }

    /// Maximal special elements below `a`.
    pub fn dual_star_candidates(&self, a: usize) -> Vec<usize> {
        let below: Vec<usize> = self.specials().into_iter().filter(|&b| self.leq(b, a)).collect();
        below
            .iter()
            .copied()
            .filter(|&b| !below.iter().any(|&x| x != b && self.leq(b, x)))
            .collect()
    }

    /// The greatest special element below `a`, if there is one.
    pub fn guarded_dstar(&self, a: usize) -> Option<usize> {
        match self.dual_star_candidates(a).as_slice() {
            [b] => Some(*b),
            _ => None,
        }
    }

    /// `(α\β, β/α)`.
    pub fn residuals(&self, a: usize, b: usize) -> (usize, usize) {
        let mut left = self.zero;
        let mut right = self.zero;
        for x in self.elements() {
            if self.leq(self.c(a, x), b) {
                left = self.j(left, x);
            }
            if self.leq(self.c(x, a), b) {
                right = self.j(right, x);
            }
        }
        (left, right)
    }

    /// The two-element algebra `0 < 1` with `· = min`.
    pub fn b2() -> Self {
        FiniteAlgebra::new(2, vec![0, 1, 1, 1], vec![0, 0, 0, 1], 1, 0).with_star()
    }

    pub fn singleton() -> Self {
        let mut m = FiniteAlgebra::new(1, vec![0], vec![0], 0, 0).with_star();
        m.dstar = Some(vec![Some(0)]);
        m
    }

    /// All binary relations on `k` points under union and composition.
    /// Relations are bitmasks with bit `i * k + j` for the pair `(i, j)`.
    ///
    /// # Panics
    /// If `k > 3`.
    pub fn rel(k: usize) -> Self {
        assert!(k <= 3, "rel(k) is provided for k <= 3");
        let size = 1usize << (k * k);
        let mut join = vec![0; size * size];
        let mut comp = vec![0; size * size];
        for r in 0..size {
            for s in 0..size {
                join[r * size + s] = r | s;
                let mut t = 0;
                for i in 0..k {
                    for j in 0..k {
                        if (0..k).any(|x| r >> (i * k + x) & 1 == 1 && s >> (x * k + j) & 1 == 1) {
                            t |= 1 << (i * k + j);
                        }
                    }
                }
                comp[r * size + s] = t;
            }
        }
        let one = (0..k).fold(0, |acc, i| acc | 1 << (i * k + i));
        FiniteAlgebra::new(size, join, comp, one, 0).with_star()
    }

    /// Same tables with `star` and `dstar` dropped.
    pub fn reduct(&self) -> Self {
        FiniteAlgebra { star: None, dstar: None, ..self.clone() }
    }
}
