//! One line per acceptance criterion. Lines are written straight to stdout so
//! they show up without `--nocapture`.

use std::io::Write;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ckit::algebra::{format_salamon, parse_salamon, LieAlgebra};
use ckit::catalog::{
    an1_i_data, an2_i_data, an2_ii_data, build, fp1_construct, fp2_construct, list, sample_pairs, Fp1Data, Fp2Data,
    Instance, Params,
};
use ckit::cstruct::{
    chern_ricci, decide_invariant_trivial, is_abelian_cs, is_integrable, obstruction_check, psi, ComplexStructure,
    ObstructionStatus, TrivialityVerdict,
};
use ckit::error::Error;
use ckit::forms::{adapted_coframe, ce_d, Form};
use ckit::hypercomplex::{obata, psi_sphere_check, sphere_samples, standard_triple, validate_triple, TripleCheck};
use ckit::lattices::{verify_certificate, TimeValue};
use ckit::matrix::{vec, Matrix};
use ckit::pipeline::{run_pipeline, PipelineInput};
use ckit::scalar::{q, qi, Complex, Rational};
use ckit::sections::{build_section, invariance_for, verify_section, Invariance, SectionCheck};

type Pair = (String, LieAlgebra<Rational>, ComplexStructure<Rational>);

fn emit(n: u32, title: &str, outcome: Result<String, String>) {
    let (tag, detail) = match &outcome {
        Ok(d) => ("PASS", d.as_str()),
        Err(d) => ("FAIL", d.as_str()),
    };
    let mut out = std::io::stdout().lock();
    writeln!(out, "criterion {n:>2} {tag}: {title}: {detail}").unwrap();
    out.flush().unwrap();
    if let Err(d) = outcome {
        panic!("criterion {n}: {d}");
    }
}

fn inst(name: &str, ps: &[(&str, &str)]) -> Instance {
    let p = ps.iter().fold(Params::new(), |p, (k, v)| p.with(k, v));
    build(name, &p).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Every catalog structure at defaults, plus the `s_n` family up to `n = 3`.
fn catalog_pairs() -> Vec<Pair> {
    let mut insts: Vec<Instance> = list().iter().map(|e| inst(e.name, &[])).collect();
    for n in ["2", "3"] {
        insts.push(inst("nakamura_s_n", &[("n", n)]));
    }
    let mut out = Vec::new();
    for i in &insts {
        for s in &i.structures {
            out.push((format!("{}/{}", i.name, s.label), i.algebra.clone(), s.j.clone()));
        }
    }
    out
}

fn sample_set() -> Vec<Pair> {
    sample_pairs(240, 2026)
        .into_iter()
        .enumerate()
        .map(|(i, s)| (format!("sample {i} {}", s.label), s.algebra, s.j))
        .collect()
}

/// Samples with a shuffled `J`, mostly non-integrable.
fn scrambled(samples: &[Pair]) -> Vec<Pair> {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    samples
        .iter()
        .take(60)
        .map(|(l, a, _)| {
            let mut idx: Vec<usize> = (0..a.dim()).collect();
            idx.shuffle(&mut rng);
            let pairs: Vec<_> = idx.chunks(2).map(|c| (c[0], c[1])).collect();
            (format!("{l} scrambled"), a.clone(), ComplexStructure::from_pairs(a.dim(), &pairs).unwrap())
        })
        .collect()
}

fn integrable(pairs: Vec<Pair>) -> Vec<Pair> {
    pairs.into_iter().filter(|(_, a, j)| is_integrable(a, j).unwrap()).collect()
}

fn cx(re: Rational, im: Rational) -> Complex<Rational> {
    Complex::new(re, im)
}

/// `1/4 sum (-psi(v_j) + i psi(u_j)) gamma_bar_j`, assembled from the coframe directly.
fn remark_beta(alg: &LieAlgebra<Rational>, j: &ComplexStructure<Rational>) -> Form<Complex<Rational>> {
    let cf = adapted_coframe(j.matrix()).unwrap();
    let p = psi(alg, j);
    let mut beta = Form::zero(alg.dim(), 1);
    for k in 0..cf.n() {
        let c = cx(-p.eval(&cf.v[k]) * q(1, 4), p.eval(&cf.u[k]) * q(1, 4));
        beta = beta + cf.gamma_bar(k).scale(&c);
    }
    beta
}

#[test]
fn criterion_01_theorem_sweep() {
    let start = Instant::now();
    let samples = sample_set();
    let mut all = catalog_pairs();
    let n_cat = all.len();
    all.extend(scrambled(&samples));
    all.extend(samples);
    let (mut trivial, mut other, mut bad) = (0, 0, Vec::new());
    for (l, a, j) in &all {
        let rep = match decide_invariant_trivial(a, j) {
            Ok(r) => r,
            Err(e) => {
                bad.push(format!("{l}: {e}"));
                continue;
            }
        };
        let sigma = adapted_coframe(j.matrix()).unwrap().sigma();
        let closed = ce_d::<Rational, Complex<Rational>>(a, &sigma).is_zero();
        let says = rep.verdict == TrivialityVerdict::InvariantTrivial;
        if says != closed {
            bad.push(format!("{l}: verdict {} but d sigma zero = {closed}", rep.verdict.name()));
        }
        if says {
            trivial += 1;
        } else {
            other += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let outcome = if !bad.is_empty() {
        Err(bad.join("; "))
    } else if secs >= 30.0 {
        Err(format!("took {secs:.1}s"))
    } else {
        Ok(format!(
            "{} pairs ({n_cat} catalog), {trivial} trivial, {other} not, {secs:.2}s",
            all.len()
        ))
    };
    emit(1, "verdict agrees with d sigma = 0", outcome);
}

#[test]
fn criterion_02_dsigma_formula() {
    let mut pairs = catalog_pairs();
    pairs.extend(sample_set());
    let pairs = integrable(pairs);
    let mut bad = Vec::new();
    for (l, a, j) in &pairs {
        let cf = adapted_coframe(j.matrix()).unwrap();
        let sigma = cf.sigma();
        if remark_beta(a, j).w(&sigma) != ce_d(a, &sigma) {
            bad.push(l.clone());
        }
    }
    let k = inst("kodaira", &[]);
    let (a, j) = (&k.algebra, &k.structure("J").unwrap().j);
    let mut want = Form::zero(4, 3);
    want.add_term(vec![0, 1, 3], cx(qi(-1), qi(0)));
    want.add_term(vec![0, 2, 3], cx(qi(0), qi(-1)));
    let sigma = adapted_coframe(j.matrix()).unwrap().sigma();
    let lhs = ce_d(a, &sigma);
    let rhs = remark_beta(a, j).w(&sigma);
    if lhs != want || rhs != want {
        bad.push(format!("kodaira: d sigma = {lhs:?}, formula = {rhs:?}"));
    }
    let outcome = if bad.is_empty() {
        Ok(format!("{} integrable pairs; kodaira both sides -e^{{013}} - i e^{{023}}", pairs.len()))
    } else {
        Err(bad.join("; "))
    };
    emit(2, "d sigma = beta ^ sigma", outcome);
}

/// `psi(f_1) = -2a - Tr A` and `psi(e_t) = Tr(J_1 A)` as linear functionals of
/// `(a, v, A)`, checked on the zero point and every coordinate direction.
fn almost_abelian_symbolic(k: usize) -> Result<usize, String> {
    let dim = 2 * k + 2;
    let t = dim - 1;
    let w = 2 * k;
    let j = {
        let mut pairs = vec![(0, t)];
        pairs.extend((0..k).map(|b| (1 + 2 * b, 2 + 2 * b)));
        ComplexStructure::from_pairs(dim, &pairs).unwrap()
    };
    let j1 = j.matrix().select(&(1..=w).collect::<Vec<_>>(), &(1..=w).collect::<Vec<_>>());
    // parameters: a, v_0..v_{w-1}, A_{rc} column major
    let n_par = 1 + w + w * w;
    let build_alg = |par: &[Rational]| {
        let mut alg = LieAlgebra::abelian(dim);
        let mut col0 = vec::zero(dim);
        col0[0] = par[0].clone();
        col0[1..=w].clone_from_slice(&par[1..=w]);
        alg.set_bracket(t, 0, col0).unwrap();
        for c in 0..w {
            let mut col = vec::zero(dim);
            for r in 0..w {
                col[1 + r] = par[1 + w + c * w + r].clone();
            }
            alg.set_bracket(t, 1 + c, col).unwrap();
        }
        alg
    };
    let mut checked = 0;
    for p in 0..=n_par {
        let mut par = vec![qi(0); n_par];
        if p < n_par {
            par[p] = qi(1);
        }
        let alg = build_alg(&par);
        alg.validate().map_err(|e| e.to_string())?;
        let a_mat = Matrix::from_cols(w, &(0..w).map(|c| par[1 + w + c * w..1 + w + (c + 1) * w].to_vec()).collect::<Vec<_>>());
        let ps = psi(&alg, &j);
        let want_f1 = -qi(2) * par[0].clone() - a_mat.trace();
        let want_t = j1.mul(&a_mat).trace();
        if ps.at(0) != &want_f1 || ps.at(t) != &want_t {
            return Err(format!("parameter {p}: psi(f1) = {}, psi(e_t) = {}", ps.at(0), ps.at(t)));
        }
        checked += 1;
    }
    Ok(checked)
}

#[test]
fn criterion_03_psi_fixtures() {
    let mut bad = Vec::new();
    let check = |bad: &mut Vec<String>, name: &str, ps: &[(&str, &str)], label: &str, want: &[(usize, i64)]| {
        let i = inst(name, ps);
        let p = psi(&i.algebra, &i.structure(label).unwrap().j);
        let nz: Vec<(usize, Rational)> =
            p.values.iter().enumerate().filter(|(_, v)| **v != qi(0)).map(|(k, v)| (k, v.clone())).collect();
        let got_at: Vec<Rational> = want.iter().map(|(k, _)| p.at(*k).clone()).collect();
        let w: Vec<Rational> = want.iter().map(|(_, v)| qi(*v)).collect();
        if got_at != w {
            bad.push(format!("{name}/{label}: psi = {nz:?}"));
        }
        nz.len()
    };
    check(&mut bad, "kodaira", &[], "J", &[(0, -2)]);
    check(&mut bad, "g_p", &[], "J", &[(5, 2)]);
    check(&mut bad, "s_6_44", &[], "J", &[(5, 4)]);
    check(&mut bad, "nakamura_splitting_jb", &[], "J~_B", &[(4, 4)]);
    // the three hypercomplex forms are single terms
    for (label, k) in [("J1", 7), ("J2", 2), ("J3", 6)] {
        if check(&mut bad, "hypercomplex_ghat", &[], label, &[(k, -4)]) != 1 {
            bad.push(format!("hypercomplex_ghat/{label}: more than one term"));
        }
    }
    let mut sym = 0;
    for k in 1..=3 {
        match almost_abelian_symbolic(k) {
            Ok(c) => sym += c,
            Err(e) => bad.push(format!("almost abelian k={k}: {e}")),
        }
    }
    let outcome = if bad.is_empty() {
        Ok(format!(
            "kodaira -2, g_p 2, s_6.44 4, splitting 4, ghat (-4e8, -4e3, -4e7); almost abelian identity on {sym} parameter points"
        ))
    } else {
        Err(bad.join("; "))
    };
    emit(3, "psi fixtures", outcome);
}

#[test]
fn criterion_04_chern_ricci() {
    let mut pairs = catalog_pairs();
    pairs.extend(sample_set());
    let pairs = integrable(pairs);
    let (mut flat, mut bad) = (0, Vec::new());
    for (l, a, j) in &pairs {
        let rho = chern_ricci(a, j);
        let dpsi = ce_d::<Rational, Rational>(a, &psi(a, j).to_form());
        if !(rho.to_form().scale(&qi(2)) + dpsi).is_zero() {
            bad.push(format!("{l}: 2 rho + d psi != 0"));
        }
        if obstruction_check(a, j) == ObstructionStatus::PsiVanishesOnCommutator {
            flat += 1;
            if !rho.is_zero() {
                bad.push(format!("{l}: psi([g,g]) = 0 but rho != 0"));
            }
        }
    }
    let outcome = if bad.is_empty() {
        Ok(format!("{} integrable pairs, {flat} with psi([g,g]) = 0 and rho = 0", pairs.len()))
    } else {
        Err(bad.join("; "))
    };
    emit(4, "2 rho + d psi = 0", outcome);
}

#[test]
fn criterion_05_abelian_j() {
    let mut pairs = catalog_pairs();
    pairs.extend(sample_set());
    let (mut count, mut nakamura, mut bad) = (0, 0, Vec::new());
    for (l, a, j) in &pairs {
        if !(a.is_unimodular() && is_integrable(a, j).unwrap() && is_abelian_cs(a, j)) {
            continue;
        }
        count += 1;
        if l.starts_with("nakamura_s") {
            nakamura += 1;
        }
        let v = decide_invariant_trivial(a, j).unwrap().verdict;
        if v != TrivialityVerdict::InvariantTrivial {
            bad.push(format!("{l}: {}", v.name()));
        }
    }
    // s and s_n for n = 1, 2, 3
    if nakamura < 4 {
        bad.push(format!("only {nakamura} abelian Nakamura structures found"));
    }
    let outcome = if bad.is_empty() {
        Ok(format!("{count} unimodular abelian pairs, {nakamura} from s and s_n"))
    } else {
        Err(bad.join("; "))
    };
    emit(5, "abelian J on unimodular g is trivial", outcome);
}

#[test]
fn criterion_06_sections() {
    let pairs = integrable(catalog_pairs());
    let mut bad = Vec::new();
    let mut lambdas = Vec::new();
    for (l, a, j) in &pairs {
        if !a.is_solvable() {
            continue;
        }
        match build_section(a, j) {
            Err(e) => bad.push(format!("{l}: {e}")),
            Ok(s) => {
                if let SectionCheck::Fail { identity } = verify_section(a, &s.sigma, &s.alpha) {
                    bad.push(format!("{l}: {identity}"));
                }
                lambdas.push((l.clone(), s.rank_one.map(|r| r.lambda)));
            }
        }
    }
    for (l, want) in [
        ("kodaira/J", 1),
        ("s_6_44/J", -2),
        ("nakamura_splitting_jb/J~_B", -2),
        ("hypercomplex_ghat/J1", 2),
    ] {
        match lambdas.iter().find(|(x, _)| x == l) {
            Some((_, Some(v))) if *v == qi(want) => {}
            other => bad.push(format!("{l}: lambda {other:?}, expected {want}")),
        }
    }
    let outcome = if bad.is_empty() {
        Ok(format!("{} structures verified; lambda kodaira 1, s_6.44 -2, splitting -2, ghat/J1 2", pairs.len()))
    } else {
        Err(bad.join("; "))
    };
    emit(6, "section construction", outcome);
}

#[test]
fn criterion_07_invariance() {
    let cases = [
        (1, TimeValue::pi(qi(2)), Invariance::Invariant),
        (1, TimeValue::pi(qi(1)), Invariance::TorsionOrder { k: 2 }),
        (-2, TimeValue::pi(qi(1)), Invariance::Invariant),
        (2, TimeValue::pi(qi(1)), Invariance::Invariant),
    ];
    let mut bad = Vec::new();
    for (l, p, want) in &cases {
        match invariance_for(&qi(*l), p) {
            Ok(got) if &got == want => {}
            other => bad.push(format!("lambda {l}, period {}: {other:?}", p.monomial())),
        }
    }
    let outcome = if bad.is_empty() {
        Ok("(1, 2pi) invariant, (1, pi) order 2, (-2, pi) invariant, (2, pi) invariant".into())
    } else {
        Err(bad.join("; "))
    };
    emit(7, "invariance and torsion", outcome);
}

#[test]
fn criterion_08_lattices() {
    let start = Instant::now();
    let mut runs: Vec<(String, Vec<(&str, String)>)> = Vec::new();
    let families: [(&str, &[&str]); 11] = [
        ("kodaira", &[]),
        ("nakamura_s", &[]),
        ("nakamura_s_n", &["1", "2", "3"]),
        ("an1_i", &["1", "2", "3"]),
        ("an1_ii", &[]),
        ("an2_i", &["2", "3"]),
        ("an2_ii", &[]),
        ("g_p", &[]),
        ("s_6_44", &[]),
        ("nakamura_splitting_jb", &[]),
        ("hypercomplex_ghat", &[]),
    ];
    for (name, ns) in families {
        let has_m = list().iter().find(|e| e.name == name).unwrap().has_param("m");
        let ms: Vec<Option<i64>> = if has_m { (3..=10).map(Some).collect() } else { vec![None] };
        let ns: Vec<Option<&str>> = if ns.is_empty() { vec![None] } else { ns.iter().map(|n| Some(*n)).collect() };
        for m in &ms {
            for n in &ns {
                let mut ps = Vec::new();
                if let Some(m) = m {
                    ps.push(("m", m.to_string()));
                }
                if let Some(n) = n {
                    ps.push(("n", n.to_string()));
                }
                runs.push((name.to_string(), ps));
            }
        }
    }
    let mut bad = Vec::new();
    let mut s644 = false;
    for (name, ps) in &runs {
        let p: Vec<(&str, &str)> = ps.iter().map(|(k, v)| (*k, v.as_str())).collect();
        let i = inst(name, &p);
        let cert = i.certificate.as_ref().unwrap();
        match verify_certificate(cert) {
            Ok(r) if r.passed => {
                if name == "s_6_44" {
                    let want: Vec<Vec<String>> =
                        [[1, 0, 0, 0, 0], [0, -1, 1, 0, 0], [0, 0, -1, 0, 0], [0, 0, 0, -1, 1], [0, 0, 0, 0, -1]]
                            .iter()
                            .map(|r| r.iter().map(|x| x.to_string()).collect())
                            .collect();
                    s644 = r.conjugates.first() == Some(&want);
                }
            }
            Ok(r) => bad.push(format!("{name} {ps:?}: {:?}", r.first_failure())),
            Err(e) => bad.push(format!("{name} {ps:?}: {e}")),
        }
    }
    if !s644 {
        bad.push("s_6_44: conjugated exp(pi A) is not (1) + [-1 1; 0 -1] + [-1 1; 0 -1]".into());
    }
    let secs = start.elapsed().as_secs_f64();
    if secs >= 10.0 {
        bad.push(format!("took {secs:.1}s"));
    }
    let outcome = if bad.is_empty() {
        Ok(format!("{} certificates over m = 3..10 verified in {secs:.2}s", runs.len()))
    } else {
        Err(bad.join("; "))
    };
    emit(8, "lattice certificates", outcome);
}

fn rejection(r: Result<(LieAlgebra<Rational>, ComplexStructure<Rational>), Error>) -> Option<(String, String)> {
    match r {
        Err(Error::Validation { equation, witness }) => Some((equation, witness)),
        _ => None,
    }
}

fn fp1_block(x: i64, y: i64, z: i64, with_eta2: bool) -> Fp1Data {
    let mut a_mat = Matrix::zeros(4, 4);
    a_mat[(0, 0)] = qi(x);
    a_mat[(1, 1)] = qi(x);
    a_mat[(1, 0)] = qi(y);
    a_mat[(0, 1)] = qi(-y);
    a_mat[(2, 2)] = qi(z);
    a_mat[(3, 3)] = qi(z);
    let mut eta = Matrix::zeros(4, 4);
    eta[(0, 1)] = qi(1);
    eta[(1, 0)] = qi(-1);
    if with_eta2 {
        eta[(2, 3)] = qi(1);
        eta[(3, 2)] = qi(-1);
    }
    Fp1Data {
        a: qi(2 * x),
        a_mat,
        eta,
        j1: ComplexStructure::from_pairs(4, &[(0, 1), (2, 3)]).unwrap(),
    }
}

#[test]
fn criterion_09_fp_builders() {
    let mut bad = Vec::new();
    let (mut agree, mut pos, mut neg) = (0, 0, 0);
    let mut tally = |bad: &mut Vec<String>, a: &LieAlgebra<Rational>, j: &ComplexStructure<Rational>, predicted: bool, l: String| {
        if !is_integrable(a, j).unwrap() {
            bad.push(format!("{l}: not integrable"));
            return;
        }
        let trivial = decide_invariant_trivial(a, j).unwrap().verdict == TrivialityVerdict::InvariantTrivial;
        if trivial != predicted {
            bad.push(format!("{l}: verdict {trivial}, prediction {predicted}"));
        }
        agree += 1;
        if predicted {
            pos += 1;
        } else {
            neg += 1;
        }
    };
    for x in -2..=2 {
        for y in -2..=2 {
            for z in -2..=2 {
                for eta2 in [false, true] {
                    if eta2 && x != z {
                        continue;
                    }
                    let d = fp1_block(x, y, z, eta2);
                    let (a, j) = fp1_construct(&d).unwrap();
                    tally(&mut bad, &a, &j, d.predicts_trivial(), format!("fp1 {x} {y} {z} {eta2}"));
                }
            }
        }
    }
    for n in 2..=3 {
        for v1 in -1..=2 {
            for v2 in -1..=2 {
                let d = an2_i_data(n, qi(v1), qi(v2));
                let (a, j) = fp2_construct(&d).unwrap();
                tally(&mut bad, &a, &j, d.predicts_trivial(), format!("an2_i {n} {v1} {v2}"));
            }
        }
    }
    // a = a1 - a2 branch with nonzero alpha, gamma, v
    for s in 1..=3 {
        for al in -1..=1 {
            let mut d: Fp2Data = an2_ii_data(&[qi(0)], qi(1), qi(-1));
            d.a1 = qi(0);
            d.a2 = qi(1);
            d.a = qi(-1);
            d.a_mat = Matrix::identity(2).scale(&qi(s));
            d.xi = Matrix::zeros(2, 2);
            d.alpha = vec![qi(al), qi(2)];
            // with xi = 0 and A = s: (s - 1)(gamma + alpha J) + gamma = 0
            let aj = d.j2.matrix().transpose().mul_vec(&d.alpha);
            d.gamma = vec::scale(&aj, &(-(qi(s) - qi(1)) / qi(s)));
            d.v = vec![qi(3), q(1, 2)];
            match fp2_construct(&d) {
                Ok((a, j)) => tally(&mut bad, &a, &j, d.predicts_trivial(), format!("fp2 forms {s} {al}")),
                Err(Error::Validation { .. }) => {}
                Err(e) => bad.push(format!("fp2 forms {s} {al}: {e}")),
            }
        }
    }
    // every equation rejects violated data and names an entry
    let mut rejected = Vec::new();
    let mut expect_rej = |r, eq: &str, prefix: &str| match rejection(r) {
        Some((e, w)) if e == eq && w.starts_with(prefix) => rejected.push(format!("{eq} [{w}]")),
        other => bad.push(format!("{eq}: got {other:?}")),
    };
    let mut d = an1_i_data(1);
    d.a_mat[(0, 0)] = qi(2);
    expect_rej(fp1_construct(&d), "A J1 = J1 A", "entry (e2, e3)");
    let mut d = fp1_block(0, 0, 0, false);
    d.eta = Matrix::zeros(4, 4);
    d.eta[(0, 2)] = qi(1);
    d.eta[(2, 0)] = qi(-1);
    expect_rej(fp1_construct(&d), "eta(J., J.) = eta", "entry (e");
    let mut d = an1_i_data(1);
    d.a = qi(1);
    expect_rej(fp1_construct(&d), "A^*eta = a eta", "entry (e");
    let mut d = an2_ii_data(&[qi(1)], qi(1), qi(1));
    d.a_mat[(0, 0)] = qi(1);
    expect_rej(fp2_construct(&d), "[A, J] = 0", "entry (e");
    let mut d = an2_i_data(2, qi(1), qi(1));
    d.a2 = qi(1);
    expect_rej(fp2_construct(&d), "0 = (a2 - a1)(a + a2 - a1)", "right side is 1");
    let mut d = an2_i_data(2, qi(1), qi(1));
    d.a1 = qi(1);
    d.a2 = qi(1);
    expect_rej(fp2_construct(&d), "0 = A^*xi - a1 xi", "entry (e");
    let mut d = an2_i_data(2, qi(1), qi(1));
    d.v = vec![qi(1), qi(0), qi(0), qi(0)];
    expect_rej(
        fp2_construct(&d),
        "0 = (a - a1)(gamma + alpha J) + A^*(gamma + alpha J) + (a2 - a1) gamma - i_v xi",
        "component e",
    );
    let outcome = if bad.is_empty() && pos > 0 && neg > 0 {
        Ok(format!(
            "{agree} constructions match the predictions ({pos} trivial, {neg} not); {} equations reject: {}",
            rejected.len(),
            rejected.join(", ")
        ))
    } else {
        Err(format!("{} (trivial {pos}, not {neg})", bad.join("; ")))
    };
    emit(9, "FP1/FP2 builders", outcome);
}

#[test]
fn criterion_10_hypercomplex() {
    let mut bad = Vec::new();
    let g = inst("hypercomplex_ghat", &[]);
    let t = g.triple.clone().unwrap();
    let mut check_triple = |name: &str, a: &LieAlgebra<Rational>, t: &ckit::hypercomplex::HypercomplexTriple<Rational>, flat: bool| {
        match validate_triple(a, t) {
            Ok(TripleCheck::Pass) => {}
            other => bad.push(format!("{name}: triple {other:?}")),
        }
        match obata(a, t) {
            Ok(o) if !flat || o.is_zero() => {}
            Ok(_) => bad.push(format!("{name}: Obata connection is not flat")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
        match psi_sphere_check(a, t, &sphere_samples(24)) {
            Ok(r) if r.linear => {}
            Ok(_) => bad.push(format!("{name}: psi not linear on the sphere")),
            Err(e) => bad.push(format!("{name}: {e}")),
        }
    };
    check_triple("ghat", &g.algebra, &t, false);
    for n in 1..=2 {
        check_triple(&format!("R^{}", 4 * n), &LieAlgebra::abelian(4 * n), &standard_triple(n), true);
    }
    let rep = run_pipeline(&PipelineInput {
        triple: Some(t),
        certificate: g.certificate.clone(),
        periods: vec![TimeValue::pi(qi(1))],
        ..PipelineInput::new(g.algebra.clone())
    });
    let js = &rep.json;
    let want = [
        ("NoInvariantSection", "PsiVanishesOnCommutator"),
        ("NoInvariantSection", "ObstructedNotTorsion"),
        ("NoInvariantSection", "ObstructedNotTorsion"),
    ];
    for (k, (v, o)) in want.iter().enumerate() {
        let s = &js["hypercomplex"]["structures"][k];
        if s["verdict"] != *v || s["obstruction"] != *o {
            bad.push(format!("J{}: {s}", k + 1));
        }
    }
    let j1 = &js["complex"][0];
    if j1["section"]["lambda"] != "2" || j1["invariance"][0]["result"] != "Invariant" {
        bad.push(format!("J1 section {}", j1["section"]));
    }
    if js["lattice"]["passed"] != true || !rep.errors.is_empty() {
        bad.push(format!("lattice {} errors {:?}", js["lattice"]["passed"], rep.errors));
    }
    let outcome = if bad.is_empty() {
        Ok("ghat and R^4, R^8 pass; ghat report: J1 trivial by a non-invariant section (lambda 2), J2 and J3 obstructed".into())
    } else {
        Err(bad.join("; "))
    };
    emit(10, "hypercomplex", outcome);
}

#[test]
fn criterion_11_parser() {
    let mut bad = Vec::new();
    let mut count = 0;
    for e in list() {
        let i = inst(e.name, &[]);
        let Some(src) = &i.shorthand else { continue };
        count += 1;
        let lookup = |k: &str| i.params.scalar(k);
        let a = match parse_salamon::<Rational>(src, &lookup) {
            Ok(a) => a,
            Err(err) => {
                bad.push(format!("{}: {err}", e.name));
                continue;
            }
        };
        let b = parse_salamon::<Rational>(&format_salamon(&a), &|_| None).unwrap();
        if a.nonzero_brackets() != b.nonzero_brackets() || a.nonzero_brackets() != i.algebra.nonzero_brackets() {
            bad.push(format!("{}: round trip differs", e.name));
        }
    }
    let h3 = parse_salamon::<Rational>("(0,0,\u{2212}e^{12})", &|_| None).unwrap();
    if h3.bracket_basis(0, 1) != vec![qi(0), qi(0), qi(1)] {
        bad.push(format!("h3: [e1,e2] = {:?}", h3.bracket_basis(0, 1)));
    }
    let outcome = if bad.is_empty() && count > 0 {
        Ok(format!("{count} shorthand entries round trip; (0,0,-e^{{12}}) gives [e1,e2] = e3"))
    } else {
        Err(bad.join("; "))
    };
    emit(11, "shorthand parser", outcome);
}
