//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Runs without the libtest harness so the lines always print.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use algact::action::{
    check_condition_f, constructible_family, has_root_of_unity_eigenvalue, AlgebraicAction, Word,
};
use algact::compare::{compare_rings, compare_toral, CompareStatus, DEFAULT_PRIME_BOUND};
use algact::exact::{charpoly, companion_z, hnf, snf, BigInt, QMat, ZMat, ZPoly};
use algact::groupoid::{denominator_support, verify_ch_identity};
use algact::invariants::{q_conjugate, rank_bound_check, UnipotentFamily};
use algact::lattice::Lattice;
use algact::polyring::{commalg_conditions, QuotientAlgebra};
use algact::schema::{any_action_from_value, ideal_from_value, parse_json, ring_from_value};
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zmat(rows: &[Vec<i64>]) -> ZMat {
    ZMat::from_rows(rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()).unwrap()
}

fn random_zmat(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> ZMat {
    zmat(
        &(0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_range(-bound..=bound)).collect())
            .collect::<Vec<_>>(),
    )
}

/// Product of random elementary matrices.
fn random_unimodular(rng: &mut StdRng, n: usize) -> ZMat {
    let mut u = ZMat::identity(n);
    for _ in 0..3 * n {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i == j {
            continue;
        }
        let mut e = ZMat::identity(n);
        e[(i, j)] = BigInt::from(rng.gen_range(-2..=2));
        u = &u * &e;
    }
    if rng.gen_bool(0.5) {
        let mut s = ZMat::identity(n);
        s[(0, 0)] = BigInt::from(-1);
        u = &u * &s;
    }
    u
}

fn is_unit(d: &BigInt) -> bool {
    d.abs().is_one()
}

// 1. Hermite and Smith normal forms recompose exactly.
fn normal_forms() -> Check {
    let mut rng = StdRng::seed_from_u64(1);
    for trial in 0..1000 {
        let (r, c) = (rng.gen_range(1..=6), rng.gen_range(1..=6));
        let m = random_zmat(&mut rng, r, c, 50);
        let h = hnf(&m);
        ensure(&h.u * &m == h.h, || format!("trial {trial}: U·M ≠ H"))?;
        ensure(is_unit(&h.u.det().unwrap()), || format!("trial {trial}: det U ≠ ±1"))?;
        // echelon shape, positive pivots, reduced above pivots, zero rows last
        for (row, &p) in h.pivots.iter().enumerate() {
            let piv = &h.h[(row, p)];
            ensure(piv.is_positive(), || format!("trial {trial}: nonpositive pivot"))?;
            ensure((0..p).all(|j| h.h[(row, j)].is_zero()), || format!("trial {trial}: not echelon"))?;
            if row > 0 {
                ensure(h.pivots[row - 1] < p, || format!("trial {trial}: pivots not increasing"))?;
            }
            for above in 0..row {
                let x = &h.h[(above, p)];
                ensure(!x.is_negative() && x < piv, || format!("trial {trial}: entry above pivot not reduced"))?;
            }
        }
        ensure(
            (h.rank..r).all(|i| (0..c).all(|j| h.h[(i, j)].is_zero())),
            || format!("trial {trial}: nonzero row after rank"),
        )?;

        let s = snf(&m);
        ensure(&(&s.u * &m) * &s.v == s.s, || format!("trial {trial}: U·M·V ≠ S"))?;
        ensure(is_unit(&s.u.det().unwrap()) && is_unit(&s.v.det().unwrap()), || {
            format!("trial {trial}: transforms not unimodular")
        })?;
        for i in 0..r {
            for j in 0..c {
                ensure(i == j || s.s[(i, j)].is_zero(), || format!("trial {trial}: S not diagonal"))?;
            }
        }
        let d = s.diagonal();
        for w in d.windows(2) {
            let ok = !w[0].is_negative()
                && if w[0].is_zero() { w[1].is_zero() } else { (&w[1] % &w[0]).is_zero() };
            ensure(ok, || format!("trial {trial}: divisibility chain broken: {d:?}"))?;
        }
    }
    Ok("1000 matrices".into())
}

// Brute-force oracle: a full-rank lattice containing N·Z^n is the same as
// the finite subgroup of (Z/N)^n generated by its generators. Points are
// stored as mixed-radix codes.
struct ModSet {
    n: usize,
    modulus: i64,
    member: Vec<bool>,
}

impl ModSet {
    fn encode(&self, v: &[i64]) -> usize {
        v.iter().rev().fold(0, |acc, &x| acc * self.modulus as usize + x.rem_euclid(self.modulus) as usize)
    }

    fn decode(&self, mut code: usize) -> Vec<i64> {
        (0..self.n)
            .map(|_| {
                let d = code % self.modulus as usize;
                code /= self.modulus as usize;
                d as i64
            })
            .collect()
    }

    fn closure(n: usize, modulus: i64, gens: &[Vec<i64>]) -> ModSet {
        let size = (modulus as usize).pow(n as u32);
        let mut set = ModSet {
            n,
            modulus,
            member: vec![false; size],
        };
        // adding a generator is a fixed shift of codes with carries, so
        // decode once per visited point
        let gens: Vec<Vec<i64>> = gens.iter().map(|g| g.iter().map(|x| x.rem_euclid(modulus)).collect()).collect();
        set.member[0] = true;
        let mut stack = vec![0usize];
        while let Some(c) = stack.pop() {
            let p = set.decode(c);
            for g in &gens {
                let q: Vec<i64> = p.iter().zip(g).map(|(a, b)| a + b).collect();
                let code = set.encode(&q);
                if !set.member[code] {
                    set.member[code] = true;
                    stack.push(code);
                }
            }
        }
        set
    }

    fn of_lattice(l: &Lattice, modulus: i64) -> ModSet {
        let rows: Vec<Vec<i64>> = l
            .basis_rows()
            .iter()
            .map(|r| r.iter().map(|x| x.to_i64().unwrap()).collect())
            .collect();
        ModSet::closure(l.rank(), modulus, &rows)
    }

    fn contains(&self, v: &[i64]) -> bool {
        self.member[self.encode(v)]
    }

    fn exponent(&self) -> i64 {
        (1..=self.modulus)
            .find(|&k| {
                (0..self.n).all(|j| {
                    let mut e = vec![0; self.n];
                    e[j] = k;
                    self.contains(&e)
                })
            })
            .unwrap()
    }
}

fn random_lattice_gens(rng: &mut StdRng, n: usize) -> (Vec<Vec<i64>>, i64) {
    loop {
        let diag: Vec<i64> = (0..n).map(|_| rng.gen_range(1..=8)).collect();
        let index: i64 = diag.iter().product();
        if index > 64 {
            continue;
        }
        let mut rows = Vec::new();
        for i in 0..n {
            let mut r = vec![0; n];
            r[i] = diag[i];
            for j in i + 1..n {
                r[j] = rng.gen_range(0..diag[j]);
            }
            rows.push(r);
        }
        // extra redundant generator, a combination of the rows
        let coeffs: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        let mix: Vec<i64> = (0..n)
            .map(|j| rows.iter().zip(&coeffs).map(|(r, c)| r[j] * c).sum())
            .collect();
        rows.push(mix);
        return (rows, index);
    }
}

fn big_rows(rows: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

// 2. Lattice intersection, sum and preimage agree with enumeration.
fn lattice_oracle() -> Check {
    let mut rng = StdRng::seed_from_u64(2);
    let mut done = 0;
    let mut skipped = 0;
    while done < 200 {
        let n = rng.gen_range(1..=3);
        let (g1, i1) = random_lattice_gens(&mut rng, n);
        let (g2, i2) = random_lattice_gens(&mut rng, n);
        let e1 = ModSet::closure(n, i1, &g1).exponent();
        let e2 = ModSet::closure(n, i2, &g2).exponent();
        let modulus = e1 / gcd(e1, e2) * e2;
        if modulus.pow(n as u32) > 200_000 {
            skipped += 1;
            continue;
        }
        let s1 = ModSet::closure(n, modulus, &g1);
        let s2 = ModSet::closure(n, modulus, &g2);
        let l1 = Lattice::from_generators(n, &big_rows(&g1)).map_err(|e| e.to_string())?;
        let l2 = Lattice::from_generators(n, &big_rows(&g2)).map_err(|e| e.to_string())?;
        ensure(l1.index() == BigInt::from(i1), || format!("pair {done}: index {} ≠ {i1} for {g1:?}", l1.index()))?;

        let inter = l1.intersect(&l2).map_err(|e| e.to_string())?;
        let want: Vec<bool> = s1.member.iter().zip(&s2.member).map(|(a, b)| *a && *b).collect();
        ensure(ModSet::of_lattice(&inter, modulus).member == want, || format!("pair {done}: intersection"))?;

        let sum = l1.sum(&l2).map_err(|e| e.to_string())?;
        let mut both = g1.clone();
        both.extend(g2.iter().cloned());
        let want = ModSet::closure(n, modulus, &both).member;
        ensure(ModSet::of_lattice(&sum, modulus).member == want, || format!("pair {done}: sum"))?;

        // preimage of l1 under a random matrix, acting on columns
        let m: Vec<Vec<i64>> = (0..n).map(|_| (0..n).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        let pre = l1.preimage(&zmat(&m)).map_err(|e| e.to_string())?;
        let want: Vec<bool> = (0..s1.member.len())
            .map(|code| {
                let x = s1.decode(code);
                let y: Vec<i64> = m.iter().map(|row| row.iter().zip(&x).map(|(a, b)| a * b).sum()).collect();
                s1.contains(&y)
            })
            .collect();
        ensure(ModSet::of_lattice(&pre, modulus).member == want, || format!("pair {done}: preimage"))?;
        done += 1;
    }
    Ok(format!("200 pairs ({skipped} oversized pairs resampled)"))
}

// 3. The doubling action on Z has family {2^k Z}.
fn doubling_family() -> Check {
    let a = AlgebraicAction::scalars_on_z(&[2]).unwrap();
    let fam = constructible_family(&a, 6).map_err(|e| e.to_string())?;
    let got: BTreeSet<Lattice> = fam.lattices().cloned().collect();
    let want: BTreeSet<Lattice> = (0..=6)
        .map(|k| Lattice::scaled(1, &BigInt::from(1i64 << k)).unwrap())
        .collect();
    ensure(got == want, || format!("family {got:?}"))?;
    let idx: Vec<BigInt> = fam.index_set().into_iter().collect();
    let want: Vec<BigInt> = (0..=6).map(|k| BigInt::from(1i64 << k)).collect();
    ensure(idx == want, || format!("index set {idx:?}"))?;
    Ok("{2^k Z : k ≤ 6}, index set {1, 2, 4, ..., 64}".into())
}

fn shipped_actions() -> Vec<(String, AlgebraicAction)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data");
    let mut entries: Vec<_> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    entries.sort();
    let mut out = Vec::new();
    for p in entries {
        if p.extension().is_some_and(|e| e == "json") {
            let v = parse_json(&std::fs::read_to_string(&p).unwrap()).unwrap();
            if let Ok(a) = any_action_from_value(&v) {
                out.push((p.file_name().unwrap().to_string_lossy().into_owned(), a));
            }
        }
    }
    out
}

// 4. The semidirect-product identity on every generator of every example.
fn ch_identity() -> Check {
    let actions = shipped_actions();
    ensure(actions.len() >= 8, || format!("only {} shipped actions", actions.len()))?;
    let mut checked = 0;
    for (name, a) in &actions {
        for g in 0..a.generators().len() {
            let r = verify_ch_identity(a, &Word::generator(g), None).map_err(|e| e.to_string())?;
            ensure(r.holds && r.failures.is_empty(), || format!("{name} generator {g}: {:?}", r.failures))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} generators across {} examples, 0 failures", actions.len()))
}

fn random_cyclotomic_block(rng: &mut StdRng) -> Vec<Vec<i64>> {
    // 3x3 block diagonal with a root-of-unity part and a random part
    let k = [1, 2, 3, 4, 6][rng.gen_range(0..5)];
    let small: Vec<Vec<i64>> = match k {
        1 => vec![vec![1]],
        2 => vec![vec![-1]],
        3 => vec![vec![0, -1], vec![1, -1]],
        4 => vec![vec![0, -1], vec![1, 0]],
        _ => vec![vec![0, -1], vec![1, 1]],
    };
    let mut m = vec![vec![0; 3]; 3];
    for (i, r) in small.iter().enumerate() {
        for (j, &x) in r.iter().enumerate() {
            m[i][j] = x;
        }
    }
    for row in m.iter_mut().skip(small.len()) {
        for x in row.iter_mut() {
            *x = rng.gen_range(-4..=4);
        }
    }
    m
}

// 5. Mixing versus (F) for single generators.
fn mixing_and_f() -> Check {
    let fib = companion_z(&ZPoly::from_i64(&[-1, -1, 1])).unwrap();
    ensure(has_root_of_unity_eigenvalue(&fib).unwrap().is_none(), || "golden companion has a root of unity".into())?;
    let fa = AlgebraicAction::single("s", fib).unwrap();
    ensure(check_condition_f(&fa, 6).unwrap().holds_up_to_bound, || "golden companion fails (F)".into())?;
    let rot = zmat(&[vec![0, -1], vec![1, 0]]);
    ensure(has_root_of_unity_eigenvalue(&rot).unwrap() == Some(4), || "rotation witness is not 4".into())?;
    let ra = AlgebraicAction::single("r", rot).unwrap();
    ensure(!check_condition_f(&ra, 6).unwrap().holds_up_to_bound, || "rotation passes (F)".into())?;

    let mut rng = StdRng::seed_from_u64(5);
    let mut with_root = 0;
    for trial in 0..100 {
        let m = if trial % 2 == 0 {
            let u = random_unimodular(&mut rng, 3);
            let b = zmat(&random_cyclotomic_block(&mut rng));
            let uinv = u.to_q().inverse().unwrap().to_z().unwrap();
            &(&u * &b) * &uinv
        } else {
            random_zmat(&mut rng, 3, 3, 5)
        };
        if m.det().unwrap().is_zero() {
            continue;
        }
        let root = has_root_of_unity_eigenvalue(&m).map_err(|e| e.to_string())?;
        let a = AlgebraicAction::single("m", m.clone()).unwrap();
        let f = check_condition_f(&a, 6).map_err(|e| e.to_string())?;
        // independent oracle: some power M^j, 1 ≤ j ≤ 6, has eigenvalue 1
        let id = QMat::identity(3);
        let power_fix = (1..=6).any(|j| (&id - &m.to_q().zpow(j).unwrap()).det().unwrap().is_zero());
        ensure(root.is_some() == power_fix && f.holds_up_to_bound == !power_fix, || {
            format!("trial {trial}: root {root:?}, (F) {}, oracle {power_fix}", f.holds_up_to_bound)
        })?;
        with_root += usize::from(root.is_some());
    }
    Ok(format!("golden ✓, rotation k = 4, 100 random 3x3 agree ({with_root} with roots of unity)"))
}

// 6. Rational conjugacy is invariant under unimodular change of basis.
fn conjugacy() -> Check {
    let mut rng = StdRng::seed_from_u64(6);
    for trial in 0..100 {
        let n = rng.gen_range(1..=4);
        let m = random_zmat(&mut rng, n, n, 6).to_q();
        let u = random_unimodular(&mut rng, n).to_q();
        let conj = &(&u * &m) * &u.inverse().unwrap();
        ensure(q_conjugate(&m, &conj).unwrap(), || format!("trial {trial}: conjugate pair rejected"))?;
    }
    let d = QMat::from_i64_rows(&[&[2, 0], &[0, 2]]);
    let j = QMat::from_i64_rows(&[&[2, 1], &[0, 2]]);
    ensure(!q_conjugate(&d, &j).unwrap(), || "diag(2,2) ~ Jordan block".into())?;
    Ok("100 random pairs conjugate; diag(2,2) ≁ [[2,1],[0,2]]".into())
}

// 7. Rank bound for commuting unipotent families.
fn rank_bound() -> Check {
    let mut rng = StdRng::seed_from_u64(7);
    let mut nontrivial = 0;
    for trial in 0..100 {
        let n = rng.gen_range(1..=4);
        // members I + p(N) with N strictly upper triangular commute
        let mut nil = QMat::zeros(n, n);
        for i in 0..n {
            for j in i + 1..n {
                nil[(i, j)] = BigInt::from(rng.gen_range(-2..=2)).into();
            }
        }
        let count = rng.gen_range(1..=3);
        let members: Vec<QMat> = (0..count)
            .map(|_| {
                let mut acc = QMat::identity(n);
                let mut pw = nil.clone();
                for _ in 1..n.max(2) {
                    let c = BigInt::from(rng.gen_range(-2..=2));
                    acc = &acc + &pw.scale(&c.into());
                    pw = &pw * &nil;
                }
                acc
            })
            .collect();
        let fam = UnipotentFamily::new(n, members).map_err(|e| format!("trial {trial}: {e}"))?;
        let r = rank_bound_check(&fam);
        ensure(r.holds, || format!("trial {trial}: bound violated {r:?}"))?;
        nontrivial += usize::from(!r.trivial);
    }
    Ok(format!("100 families ({nontrivial} nontrivial), bound held"))
}

// 8. Denominators of group elements only involve primes of the index set.
fn denominators() -> Check {
    let mut rng = StdRng::seed_from_u64(8);
    let mut total = 0;
    for (name, a) in shipped_actions() {
        let fam = constructible_family(&a, 3).map_err(|e| e.to_string())?;
        let mut allowed = BTreeSet::new();
        for idx in fam.index_set() {
            let mut k = idx.to_u64().ok_or("index too large")?;
            let mut p = 2;
            while k > 1 {
                while k % p == 0 {
                    allowed.insert(BigInt::from(p));
                    k /= p;
                }
                p += 1;
            }
        }
        let d = a.generators().len();
        for _ in 0..500 {
            let len = rng.gen_range(0..=4);
            let syllables: Vec<(usize, i64)> = (0..len)
                .map(|_| (rng.gen_range(0..d), if rng.gen_bool(0.5) { 1 } else { -1 }))
                .collect();
            let w = Word::from_syllables(syllables);
            let x: Vec<BigInt> = (0..a.rank()).map(|_| BigInt::from(rng.gen_range(-9..=9))).collect();
            let support = denominator_support(&a, &w, &x).map_err(|e| e.to_string())?;
            ensure(support.is_subset(&allowed), || {
                format!("{name}: word {w:?} has denominators {support:?} outside {allowed:?}")
            })?;
            total += 1;
        }
    }
    Ok(format!("{total} random words across the shipped actions"))
}

// 9. Exact values for two zero-dimensional ideals.
fn polyring_values() -> Check {
    let golden = ideal_from_value(&parse_json(r#"{"vars": ["u"], "gens": ["u^2 - u - 1"]}"#).unwrap()).unwrap();
    let qa = QuotientAlgebra::new(golden.groebner()).map_err(|e| e.to_string())?;
    let f = ZPoly::from_i64(&[-1, -1, 1]);
    ensure(qa.mult_matrix(0) == &companion_z(&f).unwrap().to_q(), || format!("T_u = {}", qa.mult_matrix(0)))?;
    ensure(charpoly(qa.mult_matrix(0)).unwrap() == f.to_q(), || "χ_u ≠ u² − u − 1".into())?;

    let spec =
        ideal_from_value(&parse_json(r#"{"vars": ["u", "v"], "gens": ["u^2 - 2", "v^2 - 3"]}"#).unwrap()).unwrap();
    let r = commalg_conditions(&spec.vars, &spec.groebner()).map_err(|e| e.to_string())?;
    ensure(r.dimension == Some(4), || format!("dimension {:?}", r.dimension))?;
    let d = r.d.as_ref().ok_or("no (d) report")?;
    ensure(d.norms == [BigInt::from(4), BigInt::from(9)], || format!("norms {:?}", d.norms))?;
    ensure(r.all_hold(), || format!("conditions {r:?}"))?;
    ensure(d.witnesses == [Some(2), Some(3)], || format!("witnesses {:?}", d.witnesses))?;
    Ok("T_u = companion, χ_u = u² − u − 1; dim 4, N = 4, 9, (a)-(d) ✓ with p = 2, 3".into())
}

fn ring(text: &str) -> algact::schema::RingSpec {
    ring_from_value(&parse_json(text).unwrap()).unwrap()
}

// 10. End-to-end comparisons.
fn compare_end_to_end() -> Check {
    let x2 = AlgebraicAction::scalars_on_z(&[2]).unwrap();
    let x3 = AlgebraicAction::scalars_on_z(&[3]).unwrap();
    let v = compare_toral(&x2, &x3).map_err(|e| e.to_string())?;
    ensure(v.status == CompareStatus::Distinguished && v.is_sound(), || format!("x2 vs x3: {v:?}"))?;
    ensure(v.theorem_basis.contains("toral endomorphisms"), || v.theorem_basis.clone())?;

    let j = zmat(&[vec![2, 1], vec![0, 2]]);
    let u = zmat(&[vec![2, 1], vec![1, 1]]);
    let uinv = u.to_q().inverse().unwrap().to_z().unwrap();
    let a = AlgebraicAction::single("a", j.clone()).unwrap();
    let b = AlgebraicAction::single("b", &(&u * &j) * &uinv).unwrap();
    let v = compare_toral(&a, &b).map_err(|e| e.to_string())?;
    ensure(v.status == CompareStatus::Consistent, || format!("conjugate pair: {v:?}"))?;
    let v = compare_toral(&x2, &x2).map_err(|e| e.to_string())?;
    ensure(v.status == CompareStatus::Consistent, || format!("x2 vs x2: {v:?}"))?;

    let v = compare_rings(
        &ring(r#"{"polynomial": "z^2 + 1"}"#),
        &ring(r#"{"polynomial": "z^2 - 2"}"#),
        DEFAULT_PRIME_BOUND,
    )
    .map_err(|e| e.to_string())?;
    ensure(v.summary == "distinguished at p = 5" && v.is_sound(), || format!("z²+1 vs z²−2: {v:?}"))?;
    ensure(v.theorem_basis.contains("commutative ring rigidity"), || v.theorem_basis.clone())?;

    let v = compare_rings(
        &ring(r#"{"polynomial": "z^2 - 2"}"#),
        &ring(r#"{"polynomial": "z^2 - 8"}"#),
        DEFAULT_PRIME_BOUND,
    )
    .map_err(|e| e.to_string())?;
    ensure(
        v.status == CompareStatus::Consistent && v.summary.starts_with("indistinguishable"),
        || format!("z²−2 vs z²−8: {v:?}"),
    )?;
    Ok("x2/x3 distinguished, conjugates consistent, p = 5, z²−2 ~ z²−8 indistinguishable".into())
}

fn main() {
    type Criterion = (&'static str, fn() -> Check, u64);
    let criteria: [Criterion; 10] = [
        ("normal forms", normal_forms, 10),
        ("lattice oracle", lattice_oracle, 30),
        ("doubling family", doubling_family, 1),
        ("semidirect identity", ch_identity, 1),
        ("mixing and (F)", mixing_and_f, 10),
        ("conjugacy invariance", conjugacy, 1),
        ("unipotent rank bound", rank_bound, 10),
        ("denominator support", denominators, 10),
        ("polynomial rings", polyring_values, 1),
        ("compare end to end", compare_end_to_end, 5),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*limit);
        let line = match (&outcome, over) {
            (Ok(detail), false) => format!("PASS  {detail}"),
            (Ok(detail), true) => format!("FAIL  over the {limit} s limit; {detail}"),
            (Err(msg), _) => format!("FAIL  {msg}"),
        };
        if outcome.is_err() || over {
            failed += 1;
        }
        println!("criterion {:>2} {:<22} {:>8.2?}  {line}", i + 1, name, elapsed);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
