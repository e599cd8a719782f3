//! Zero-dimensional quotients `Q[u_1, …, u_d]/I`: staircase bases,
//! multiplication matrices, characteristic polynomials and norms, and the
//! hypothesis battery for the associated `N^d`-actions.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::groebner::{pure_power_bounds, GroebnerBasis};
use super::mpoly::{divides, MPoly, Monomial};
use crate::action::{AlgebraicAction, Generator, MonoidKind, Verdict};
use crate::error::{Error, Result};
use crate::exact::{
    arith, charpoly, cyclotomic, unimodular_divisor, QMat, QPoly, UnimodularSearch, ZPoly,
};

/// `Q[u]/I` with its staircase basis and the matrices `T_i` of
/// multiplication by `u_i`, acting on coordinate columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientAlgebra {
    gb: GroebnerBasis,
    basis: Vec<Monomial>,
    t: Vec<QMat>,
}

impl QuotientAlgebra {
    pub fn new(gb: GroebnerBasis) -> Result<Self> {
        if gb.is_unit() {
            return Err(Error::InvalidArgument("the ideal is the whole ring".into()));
        }
        let leads = gb.leading_monomials();
        let bounds = pure_power_bounds(&leads, gb.nvars()).ok_or(Error::NotZeroDimensional)?;
        let mut basis: Vec<Monomial> = vec![vec![]];
        for &b in &bounds {
            basis = basis
                .into_iter()
                .flat_map(|m| {
                    (0..b).map(move |e| {
                        let mut m = m.clone();
                        m.push(e);
                        m
                    })
                })
                .collect();
        }
        basis.retain(|m| !leads.iter().any(|l| divides(l, m)));
        let order = gb.order();
        basis.sort_by(|a, b| order.cmp(a, b));
        let mut qa = QuotientAlgebra {
            gb,
            basis,
            t: Vec::new(),
        };
        qa.t = (0..qa.gb.nvars())
            .map(|i| qa.matrix_by_reduction(&MPoly::var(qa.gb.nvars(), i)))
            .collect();
        Ok(qa)
    }

    pub fn groebner(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.gb.nvars()
    }

    /// `T_i`, multiplication by `u_{i+1}`.
    pub fn mult_matrix(&self, i: usize) -> &QMat {
        &self.t[i]
    }

    pub fn mult_matrices(&self) -> &[QMat] {
        &self.t
    }

    /// Coordinates of the normal form of `f` along the staircase basis.
    pub fn coords(&self, f: &MPoly) -> Vec<BigRational> {
        let r = self.gb.reduce(f);
        self.basis.iter().map(|m| r.coeff(m)).collect()
    }

    fn matrix_by_reduction(&self, f: &MPoly) -> QMat {
        let n = self.dimension();
        let mut m = QMat::zeros(n, n);
        for (j, b) in self.basis.iter().enumerate() {
            let prod = f.mul_term(b, &BigRational::one());
            for (i, c) in self.coords(&prod).into_iter().enumerate() {
                m[(i, j)] = c;
            }
        }
        m
    }

    /// `T_f`, obtained by substituting the commuting `T_i` into `f`.
    pub fn mult_matrix_of(&self, f: &MPoly) -> QMat {
        let n = self.dimension();
        let mut out = QMat::zeros(n, n);
        for (mono, c) in f.terms() {
            let mut m = QMat::identity(n);
            for (i, &e) in mono.iter().enumerate() {
                if e > 0 {
                    m = &m * &self.t[i].pow(e as u64);
                }
            }
            out = &out + &m.scale(c);
        }
        out
    }

    /// `T_f` computed directly from normal forms of `f·b`.
    pub fn mult_matrix_by_reduction(&self, f: &MPoly) -> QMat {
        self.matrix_by_reduction(f)
    }

    /// The `N^d`-action by the `T_i`, when they are integer matrices.
    pub fn action(&self, names: &[String]) -> Result<AlgebraicAction> {
        let generators = self
            .t
            .iter()
            .enumerate()
            .map(|(i, m)| {
                let matrix = m.to_z().ok_or_else(|| {
                    Error::InvalidArgument("multiplication matrices are not integral".into())
                })?;
                Ok(Generator {
                    name: names.get(i).cloned().unwrap_or_else(|| format!("u{}", i + 1)),
                    matrix,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        AlgebraicAction::new(self.dimension(), generators, MonoidKind::FreeAbelian)
    }
}

/// `χ_f = det(z − T_f)` and `N(f) = |det T_f|`.
pub fn char_poly_and_norm(qa: &QuotientAlgebra, f: &MPoly) -> Result<(QPoly, BigRational)> {
    let t = qa.mult_matrix_of(f);
    Ok((charpoly(&t)?, t.det()?.abs()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionC {
    pub holds: bool,
    /// Monomial `f` with `det(1 − T_f) ≠ 0`.
    pub witness: Option<String>,
    /// Largest total degree searched.
    pub bound: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionD {
    /// `None` when some norm could not be factored.
    pub holds: Option<bool>,
    #[serde(with = "crate::json::int_vec")]
    pub norms: Vec<BigInt>,
    /// For each variable, a prime dividing its norm and no other.
    pub witnesses: Vec<Option<u64>>,
    pub unfactored: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommalgReport {
    pub vars: Vec<String>,
    pub groebner_basis: Vec<String>,
    pub zero_dimensional: bool,
    pub dimension: Option<usize>,
    /// Zero-dimensional and no variable lies in the ideal.
    pub a: bool,
    /// Every `T_{u_k}` is invertible.
    pub b: Option<bool>,
    pub c: Option<ConditionC>,
    pub d: Option<ConditionD>,
    pub note: String,
}

impl CommalgReport {
    pub fn all_hold(&self) -> bool {
        self.a
            && self.b == Some(true)
            && self.c.as_ref().is_some_and(|c| c.holds)
            && self.d.as_ref().is_some_and(|d| d.holds == Some(true))
    }
}

fn monomials_of_degree(nvars: usize, deg: u32) -> Vec<Monomial> {
    if nvars == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in monomials_of_degree(nvars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub fn commalg_conditions(vars: &[String], gb: &GroebnerBasis) -> Result<CommalgReport> {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let shown = gb
        .polys()
        .iter()
        .map(|p| p.display(&names, gb.order()))
        .collect();
    let note = "conditions are evaluated on the multiplication matrices; no points of V(I) are computed"
        .to_string();
    let zero_dimensional = gb.is_zero_dimensional() && !gb.is_unit();
    if !zero_dimensional {
        return Ok(CommalgReport {
            vars: vars.to_vec(),
            groebner_basis: shown,
            zero_dimensional,
            dimension: None,
            a: false,
            b: None,
            c: None,
            d: None,
            note,
        });
    }
    let qa = QuotientAlgebra::new(gb.clone())?;
    let d = qa.nvars();
    let a = (0..d).all(|k| !gb.reduce(&MPoly::var(d, k)).is_zero());

    let dets: Vec<BigRational> = qa
        .mult_matrices()
        .iter()
        .map(QMat::det)
        .collect::<Result<_>>()?;
    let b = dets.iter().all(|x| !x.is_zero());

    let bound = 2 * qa.dimension();
    let id = QMat::identity(qa.dimension());
    let mut witness = None;
    'search: for deg in 1..=bound as u32 {
        for m in monomials_of_degree(d, deg) {
            let f = MPoly::term(m, BigRational::one());
            if !(&id - &qa.mult_matrix_of(&f)).det()?.is_zero() {
                witness = Some(f.display(&names, gb.order()));
                break 'search;
            }
        }
    }
    let c = ConditionC {
        holds: witness.is_some(),
        witness,
        bound,
    };

    let norms: Vec<BigInt> = dets
        .iter()
        .map(|x| {
            let x = x.abs();
            if x.is_integer() {
                Ok(x.to_integer())
            } else {
                Err(Error::InvalidArgument(format!("non-integral norm {x}")))
            }
        })
        .collect::<Result<_>>()?;
    let mut unfactored = Vec::new();
    let mut supports = Vec::new();
    for nm in &norms {
        if nm.is_zero() {
            supports.push(Some(Vec::new()));
            continue;
        }
        match arith::trial_factor(nm, arith::TRIAL_DIVISION_BOUND) {
            Some(f) => supports.push(Some(f.into_iter().map(|(p, _)| p).collect::<Vec<_>>())),
            None => {
                unfactored.push(nm.to_string());
                supports.push(None);
            }
        }
    }
    let witnesses: Vec<Option<u64>> = (0..d)
        .map(|j| {
            let primes = supports[j].as_ref()?;
            if norms[j].is_zero() {
                return None;
            }
            primes
                .iter()
                .find(|p| {
                    norms
                        .iter()
                        .enumerate()
                        .all(|(k, nk)| k == j || (!nk.is_zero() && !(nk % *p).is_zero()))
                })
                .and_then(ToPrimitive::to_u64)
        })
        .collect();
    let holds = if witnesses.iter().all(Option::is_some) {
        Some(true)
    } else if unfactored.is_empty() {
        Some(false)
    } else {
        None
    };

    Ok(CommalgReport {
        vars: vars.to_vec(),
        groebner_basis: shown,
        zero_dimensional,
        dimension: Some(qa.dimension()),
        a,
        b: Some(b),
        c: Some(c),
        d: Some(ConditionD {
            holds,
            norms,
            witnesses,
            unfactored,
        }),
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrincipalReport {
    pub polynomial: String,
    pub verdict: Verdict,
    /// Monic integer divisor with constant term ±1, if one was found.
    pub unimodular_divisor: Option<String>,
    pub cyclotomic_factor: Option<u64>,
    pub non_constant: bool,
    pub monic: bool,
    /// `|f(0)| > 1`, i.e. the action is not by an automorphism.
    pub non_automorphic: bool,
    /// No root of unity is a root of `f`.
    pub mixing: bool,
    pub f_at_one_nonzero: bool,
    /// `f` non-constant, monic, `|f(0)| > 1`, `f(1) ≠ 0`: conditions (a)–(d).
    pub standing: bool,
}

/// Exactness of `N ↷ Z[u]/(f)` by multiplication with `u`: exact precisely
/// when no unimodular polynomial divides `f`.
pub fn principal_exactness(f: &ZPoly) -> Result<PrincipalReport> {
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Err(Error::InvalidArgument("constant polynomial".into()));
    }
    let f0 = f.coeff(0);
    if f0.is_zero() {
        return Err(Error::InvalidArgument("f(0) = 0: multiplication by u is not injective".into()));
    }
    let fq = f.to_q();
    let cyclotomic_factor = crate::action::cyclotomic_orders(n)
        .into_iter()
        .find(|&k| cyclotomic(k).to_q().divides(&fq));
    let (verdict, divisor) = match unimodular_divisor(f)? {
        UnimodularSearch::NoneExists => (Verdict::Exact, None),
        UnimodularSearch::Found(g) => (Verdict::NotExact, Some(g.to_string())),
        UnimodularSearch::Inconclusive => (Verdict::Inconclusive, None),
    };
    let non_automorphic = f0.abs() > BigInt::one();
    let f_at_one_nonzero = !f.eval(&BigInt::one()).is_zero();
    Ok(PrincipalReport {
        polynomial: f.to_string(),
        verdict,
        unimodular_divisor: divisor,
        cyclotomic_factor,
        non_constant: true,
        monic: true,
        non_automorphic,
        mixing: cyclotomic_factor.is_none(),
        f_at_one_nonzero,
        standing: non_automorphic && f_at_one_nonzero,
    })
}

#[cfg(test)]
mod tests {
    use super::super::groebner::buchberger;
    use super::super::mpoly::MonomialOrder;
    use super::super::parse::parse_poly;
    use super::*;
    use crate::exact::companion_q;

    fn setup(gens: &[&str], vars: &[&str]) -> (Vec<String>, GroebnerBasis) {
        let ps: Vec<MPoly> = gens.iter().map(|g| parse_poly(g, vars).unwrap()).collect();
        (
            vars.iter().map(|s| s.to_string()).collect(),
            buchberger(&ps, MonomialOrder::DegRevLex),
        )
    }

    fn qa(gens: &[&str], vars: &[&str]) -> QuotientAlgebra {
        QuotientAlgebra::new(setup(gens, vars).1).unwrap()
    }

    fn qi(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn golden_ratio_quotient() {
        let a = qa(&["u^2 - u - 1"], &["u"]);
        assert_eq!(a.basis(), &[vec![0], vec![1]]);
        let f = QPoly::from_i64(&[-1, -1, 1]);
        assert_eq!(a.mult_matrix(0), &companion_q(&f).unwrap());
        assert_eq!(a.mult_matrix(0), &QMat::from_i64_rows(&[&[0, 1], &[1, 1]]));
        let (chi, norm) = char_poly_and_norm(&a, &MPoly::var(1, 0)).unwrap();
        assert_eq!(chi, f);
        assert_eq!(norm, qi(1));
    }

    #[test]
    fn two_square_roots() {
        let a = qa(&["u^2 - 2", "v^2 - 3"], &["u", "v"]);
        assert_eq!(a.dimension(), 4);
        let mut basis = a.basis().to_vec();
        basis.sort();
        assert_eq!(basis, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        let t = a.mult_matrices();
        assert_eq!(&t[0] * &t[1], &t[1] * &t[0]);
        assert_eq!(char_poly_and_norm(&a, &MPoly::var(2, 0)).unwrap().1, qi(4));
        assert_eq!(char_poly_and_norm(&a, &MPoly::var(2, 1)).unwrap().1, qi(9));
        let uv = parse_poly("u*v", &["u", "v"]).unwrap();
        let (chi, _) = char_poly_and_norm(&a, &uv).unwrap();
        assert_eq!(chi, QPoly::from_i64(&[36, 0, -12, 0, 1]));
        assert_eq!(a.mult_matrix_of(&uv), a.mult_matrix_by_reduction(&uv));
    }

    #[test]
    fn linear_quotient() {
        let a = qa(&["u - 5"], &["u"]);
        assert_eq!(a.basis(), &[vec![0]]);
        assert_eq!(a.mult_matrix(0), &QMat::from_i64_rows(&[&[5]]));
    }

    #[test]
    fn not_zero_dimensional() {
        let (_, gb) = setup(&["u*v"], &["u", "v"]);
        assert_eq!(QuotientAlgebra::new(gb), Err(Error::NotZeroDimensional));
    }

    #[test]
    fn commalg_examples() {
        let (vars, gb) = setup(&["u^2 - 2", "v^2 - 3"], &["u", "v"]);
        let r = commalg_conditions(&vars, &gb).unwrap();
        assert!(r.a);
        assert_eq!(r.b, Some(true));
        assert!(r.c.as_ref().unwrap().holds);
        let d = r.d.as_ref().unwrap();
        assert_eq!(d.norms, vec![BigInt::from(4), BigInt::from(9)]);
        assert_eq!(d.witnesses, vec![Some(2), Some(3)]);
        assert!(r.all_hold());

        let (vars, gb) = setup(&["u^2 - u - 1"], &["u"]);
        let r = commalg_conditions(&vars, &gb).unwrap();
        assert_eq!(r.d.as_ref().unwrap().holds, Some(false));
        assert!(!r.all_hold());

        let (vars, gb) = setup(&["u*v"], &["u", "v"]);
        let r = commalg_conditions(&vars, &gb).unwrap();
        assert!(!r.a && r.b.is_none());
    }

    #[test]
    fn condition_c_needs_a_monomial_off_one() {
        // V(I) = {1}: every monomial takes the value 1
        let (vars, gb) = setup(&["u - 1"], &["u"]);
        let r = commalg_conditions(&vars, &gb).unwrap();
        let c = r.c.unwrap();
        assert!(!c.holds);
        assert_eq!(c.bound, 2);
    }

    #[test]
    fn principal_examples() {
        let r = principal_exactness(&ZPoly::from_i64(&[-2, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::Exact);
        assert!(r.standing);

        let r = principal_exactness(&ZPoly::from_i64(&[2, -3, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::NotExact);
        assert_eq!(r.cyclotomic_factor, Some(1));

        // a unimodular polynomial divides itself
        let r = principal_exactness(&ZPoly::from_i64(&[-1, -1, 1])).unwrap();
        assert_eq!(r.verdict, Verdict::NotExact);
        assert!(r.mixing && !r.non_automorphic && !r.standing);

        assert_eq!(
            principal_exactness(&ZPoly::from_i64(&[1, 2])).map(|r| r.verdict),
            Err(Error::NotMonic)
        );
    }
}
