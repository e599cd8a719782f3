//! Buchberger's algorithm over Q with the normal selection strategy and both
//! Buchberger criteria.

use std::collections::BTreeSet;

use super::mpoly::{divides, lcm, normal_form, s_polynomial, MPoly, Monomial, MonomialOrder};

/// A reduced Gröbner basis: monic, no leading monomial divides a term of
/// another element, sorted by decreasing leading monomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    order: MonomialOrder,
    polys: Vec<MPoly>,
}

impl GroebnerBasis {
    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn polys(&self) -> &[MPoly] {
        &self.polys
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|g| g.leading_monomial(self.order).expect("nonzero").clone())
            .collect()
    }

    pub fn reduce(&self, f: &MPoly) -> MPoly {
        normal_form(f, &self.polys, self.order)
    }

    pub fn contains(&self, f: &MPoly) -> bool {
        self.reduce(f).is_zero()
    }

    /// The unit ideal.
    pub fn is_unit(&self) -> bool {
        self.polys
            .iter()
            .any(|g| g.leading_monomial(self.order).is_some_and(|m| m.iter().all(|&e| e == 0)))
    }

    /// Each variable has a pure power among the leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        pure_power_bounds(&self.leading_monomials(), self.nvars).is_some()
    }
}

/// For each variable, the smallest exponent `k` with `u_i^k` a leading
/// monomial, if every variable has one.
pub(crate) fn pure_power_bounds(leads: &[Monomial], nvars: usize) -> Option<Vec<u32>> {
    (0..nvars)
        .map(|i| {
            leads
                .iter()
                .filter(|m| m.iter().enumerate().all(|(j, &e)| j == i || e == 0))
                .map(|m| m[i])
                .min()
        })
        .collect()
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

pub fn buchberger(gens: &[MPoly], order: MonomialOrder) -> GroebnerBasis {
    let nvars = gens.first().map_or(0, MPoly::nvars);
    let mut g: Vec<MPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.monic(order))
        .collect();
    let lm = |p: &MPoly| p.leading_monomial(order).expect("nonzero").clone();
    let mut leads: Vec<Monomial> = g.iter().map(lm).collect();
    let mut pairs: BTreeSet<(usize, usize)> = (0..g.len())
        .flat_map(|j| (0..j).map(move |i| (i, j)))
        .collect();

    while !pairs.is_empty() {
        // normal strategy: the pair with the smallest lcm
        let &(i, j) = pairs
            .iter()
            .min_by(|a, b| {
                order.cmp(&lcm(&leads[a.0], &leads[a.1]), &lcm(&leads[b.0], &leads[b.1]))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));
        let l = lcm(&leads[i], &leads[j]);
        let coprime = leads[i].iter().zip(&leads[j]).all(|(a, b)| *a == 0 || *b == 0);
        if coprime {
            continue;
        }
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(&leads[k], &l)
                && !pairs.contains(&pair_key(i, k))
                && !pairs.contains(&pair_key(j, k))
        });
        if chain {
            continue;
        }
        let r = normal_form(&s_polynomial(&g[i], &g[j], order), &g, order);
        if r.is_zero() {
            continue;
        }
        let r = r.monic(order);
        let m = g.len();
        leads.push(lm(&r));
        g.push(r);
        pairs.extend((0..m).map(|k| (k, m)));
    }
    reduce_basis(nvars, g, order)
}

fn reduce_basis(nvars: usize, g: Vec<MPoly>, order: MonomialOrder) -> GroebnerBasis {
    let lm = |p: &MPoly| p.leading_monomial(order).expect("nonzero").clone();
    // minimal: drop elements whose leading monomial another one divides
    let mut minimal: Vec<MPoly> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let m = lm(p);
        let redundant = g.iter().enumerate().any(|(j, q)| {
            let mq = lm(q);
            j != i && divides(&mq, &m) && (mq != m || j < i)
        });
        if !redundant {
            minimal.push(p.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let (m, c) = {
            let (m, c) = minimal[i].leading(order).expect("nonzero");
            (m.clone(), c.clone())
        };
        let mut tail = minimal[i].clone();
        tail = &tail - &MPoly::term(m.clone(), c.clone());
        let r = &MPoly::term(m, c) + &normal_form(&tail, &others, order);
        reduced.push(r.monic(order));
    }
    reduced.sort_by(|a, b| order.cmp(&lm(b), &lm(a)));
    GroebnerBasis {
        nvars,
        order,
        polys: reduced,
    }
}
