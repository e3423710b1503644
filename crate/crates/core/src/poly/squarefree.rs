use num_traits::Signed;

use super::IntPoly;
use crate::{Error, Result};

/// Yun's square-free decomposition over Z.
///
/// Returns pairs `(q_i, i)` with each `q_i` square-free, primitive with
/// positive leading coefficient, pairwise coprime, and
/// `prod q_i^i = +-primitive_part(f)`; multiplicities are increasing and
/// factors of multiplicity `i` appear once. Constant input yields the empty
/// decomposition.
pub fn squarefree_decompose(f: &IntPoly) -> Result<Vec<(IntPoly, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial { op: "squarefree_decompose" });
    }
    let mut pp = f.primitive_part();
    if pp.leading_coeff().is_negative() {
        pp = -&pp;
    }
    if pp.is_constant() {
        return Ok(Vec::new());
    }

    let deriv = pp.derivative();
    let a = pp.gcd(&deriv);
    let mut b = pp.div_exact(&a).expect("gcd divides f");
    let mut c = deriv.div_exact(&a).expect("gcd divides f'");
    let mut d = &c - &b.derivative();
    let mut out = Vec::new();
    let mut mult = 1u32;
    while b.degree().is_some_and(|deg| deg > 0) {
        let g = b.gcd(&d);
        if g.degree().is_some_and(|deg| deg > 0) {
            out.push((g.clone(), mult));
        }
        b = b.div_exact(&g).expect("gcd divides b");
        c = d.div_exact(&g).expect("gcd divides d");
        d = &c - &b.derivative();
        mult += 1;
    }
    Ok(out)
}

/// Product of the distinct irreducible-over-Q factors to the first power,
/// primitive with positive leading coefficient.
pub fn squarefree_part(f: &IntPoly) -> Result<IntPoly> {
    let mut out = IntPoly::one();
    for (q, _) in squarefree_decompose(f)? {
        out = &out * &q;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;

    fn p(s: &str) -> IntPoly {
        parse_poly(s).unwrap().0
    }

    fn recombine(parts: &[(IntPoly, u32)]) -> IntPoly {
        let mut v = IntPoly::one();
        for (q, m) in parts {
            v = &v * &q.pow(*m);
        }
        v
    }

    #[test]
    fn squarefree_input_passes_through() {
        let f = p("t^2 - t + 10");
        assert_eq!(squarefree_decompose(&f).unwrap(), vec![(f.clone(), 1)]);
        // Content and sign are discarded.
        assert_eq!(
            squarefree_decompose(&p("-6*t^2 + 6*t - 60")).unwrap(),
            vec![(f, 1)]
        );
    }

    #[test]
    fn multiplicities_are_recovered() {
        let f = &(&p("t - 1").pow(2) * &p("t + 2")) * &p("t^2 + 1").pow(3);
        let parts = squarefree_decompose(&f).unwrap();
        assert_eq!(
            parts,
            vec![(p("t + 2"), 1), (p("t - 1"), 2), (p("t^2 + 1"), 3)]
        );
        assert_eq!(recombine(&parts), f);
    }

    #[test]
    fn same_multiplicity_factors_group() {
        let f = &p("t - 1").pow(2) * &p("t + 1").pow(2);
        let parts = squarefree_decompose(&f).unwrap();
        assert_eq!(parts, vec![(p("t^2 - 1"), 2)]);
    }

    #[test]
    fn constants_and_zero() {
        assert_eq!(squarefree_decompose(&p("12")).unwrap(), Vec::new());
        assert!(squarefree_decompose(&IntPoly::zero()).is_err());
    }

    #[test]
    fn squarefree_part_examples() {
        let f = &p("t - 1").pow(3) * &p("t + 5");
        assert_eq!(squarefree_part(&f).unwrap(), &p("t - 1") * &p("t + 5"));
        assert_eq!(squarefree_part(&p("7")).unwrap(), IntPoly::one());
    }
}
