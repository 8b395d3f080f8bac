use super::Formula;

/// Translates a single-type formula into the multi-type language.
///
/// Homomorphic on atoms, constants, `+` and `.`; `a^*` becomes
/// `box(fdia(a))` and `a^#` becomes `box(bbox(a))`. Multi-type connectives
/// already present are translated homomorphically as well, so the map is
/// total.
pub fn translate(f: &Formula) -> Formula {
    match f {
        Formula::Atom(_) | Formula::One | Formula::Zero => f.clone(),
        Formula::Union(a, b) => Formula::union(translate(a), translate(b)),
        Formula::Comp(a, b) => Formula::comp(translate(a), translate(b)),
        Formula::Star(a) => Formula::boxf(Formula::fdia(translate(a))),
        Formula::DualStar(a) => Formula::boxf(Formula::bbox(translate(a))),
        Formula::BoxF(a) => Formula::boxf(translate(a)),
        Formula::FDia(a) => Formula::fdia(translate(a)),
        Formula::BBox(a) => Formula::bbox(translate(a)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, Lang};

    fn tr(s: &str) -> Formula {
        translate(&parse_formula(s, Lang::SingleType).unwrap())
    }

    fn mt(s: &str) -> Formula {
        parse_formula(s, Lang::MultiType).unwrap()
    }

    #[test]
    fn star_becomes_box_fdia() {
        assert_eq!(tr("a^*"), mt("box(fdia(a))"));
    }

    #[test]
    fn homomorphic_clauses() {
        assert_eq!(tr("((a + b) . c)"), mt("((a + b) . c)"));
    }

    #[test]
    fn nested_stars() {
        assert_eq!(tr("a^*^#"), mt("box(bbox(box(fdia(a))))"));
    }
}
