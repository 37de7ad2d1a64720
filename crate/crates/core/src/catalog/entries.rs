use num_traits::{One, Zero};

use super::fp::{an1_i_data, an1_ii_data, an2_i_data, an2_ii_data, fp1_construct, fp2_construct};
use super::{AdMatch, EntryInfo, Expected, Instance, ParamKind, ParamSpec, Params, Structure};
use crate::algebra::{parse_salamon, BracketSpec, LieAlgebra};
use crate::cstruct::{is_integrable, psi, ComplexStructure};
use crate::error::{Error, Result};
use crate::hypercomplex::realification_double;
use crate::lattices::{
    parse_monomial, unit_time, CheckLine, ColumnSpec, Conjugator, DerivationPart, Generator, LatticeCertificate,
    PartShape, Plane, StructuredDerivation, TimeValue, UnitSpec,
};
use crate::matrix::{vec, Matrix};
use crate::scalar::{q, qi, Monomial, Rational};
use crate::sections::Invariance;
use crate::subspace::SubspaceBasis;

const NAKAMURA_S: &str = "(e^{16}-e^{25},e^{15}+e^{26},-e^{36}+e^{45},-e^{35}-e^{46},0,0)";
const G_RS: &str = "((r-1)e^{15}+s e^{16}-s e^{25}+(r+1)e^{26},\
                    s e^{15}-(r+1)e^{16}+(r-1)e^{25}+s e^{26},\
                    (1-r)e^{35}-s e^{36}-s e^{45}+(r+1)e^{46},\
                    s e^{35}-(r+1)e^{36}-(r-1)e^{45}-s e^{46},0,0)";

fn p(name: &'static str, kind: ParamKind, default: &'static str) -> ParamSpec {
    ParamSpec { name, kind, default }
}

fn m_param() -> ParamSpec {
    p("m", ParamKind::Integer, "3")
}

/// Every entry, in a fixed order.
pub fn list() -> Vec<EntryInfo> {
    use ParamKind::*;
    let e = |name, summary, params| EntryInfo { name, summary, params };
    vec![
        e("kodaira", "primary Kodaira surface as R x| h3", vec![]),
        e("inoue_s0", "Inoue surface of type S0", vec![p("b", Rational, "1")]),
        e("g1", "almost abelian, invariantly trivial", vec![]),
        e("g2_alpha", "almost abelian family with parameter alpha", vec![p("alpha", Rational, "1")]),
        e("nakamura_s", "Nakamura manifold, abelian and bi-invariant J", vec![m_param()]),
        e("nakamura_s_n", "R^2 x| R^{4n}", vec![p("n", Integer, "1"), m_param()]),
        e("an1_i", "R x| h_{4n+1} with B = 0 + I + (-I)", vec![p("n", Integer, "1"), m_param()]),
        e("an1_ii", "R x| h_{2n+1} with rotation blocks q_j pi", vec![p("n", Integer, "2"), p("q", List, "1,-1")]),
        e(
            "an2_i",
            "R x| (h_{4n-3} + R^2) with shear and B = I + (-I)",
            vec![p("n", Integer, "2"), p("v1", Rational, "1"), p("v2", Rational, "1"), m_param()],
        ),
        e(
            "an2_ii",
            "R x| (h_{2n-1} + R^2) with shear and rotation blocks q_j pi",
            vec![p("n", Integer, "3"), p("q", List, "1,-1"), p("v1", Rational, "1"), p("v2", Rational, "1")],
        ),
        e("g_p", "G_5.17^{p,-p,2} x R", vec![p("p", Rational, "1"), m_param()]),
        e("s_6_44", "s_6.44 with a rank-one section", vec![]),
        e(
            "nakamura_splitting_jb",
            "Nakamura manifold with the complex structure J_B, B = r + is",
            vec![p("r", Rational, "0"), p("s", Rational, "0"), m_param()],
        ),
        e("hypercomplex_ghat", "realified double carrying a hypercomplex structure", vec![m_param()]),
    ]
}

/// Builds a named entry.
pub fn build(name: &str, params: &Params) -> Result<Instance> {
    let info = list()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.into()))?;
    let ps = params.resolve(&info)?;
    let mut inst = match name {
        "kodaira" => kodaira(),
        "inoue_s0" => inoue_s0(&ps),
        "g1" => g1(),
        "g2_alpha" => g2_alpha(&ps),
        "nakamura_s" => nakamura_s(&ps),
        "nakamura_s_n" => nakamura_s_n(&ps),
        "an1_i" => an1_i(&ps),
        "an1_ii" => an1_ii(&ps),
        "an2_i" => an2_i(&ps),
        "an2_ii" => an2_ii(&ps),
        "g_p" => g_p(&ps),
        "s_6_44" => s_6_44(),
        "nakamura_splitting_jb" => nakamura_splitting(&ps),
        "hypercomplex_ghat" => hypercomplex_ghat(&ps),
        _ => unreachable!("listed entry without builder"),
    }?;
    inst.name = name.into();
    inst.params = ps;
    Ok(inst)
}

fn instance(algebra: LieAlgebra<Rational>, structures: Vec<Structure>) -> Instance {
    Instance {
        name: String::new(),
        params: Params::new(),
        algebra,
        shorthand: None,
        structures,
        triple: None,
        certificate: None,
        ad_match: None,
        almost_abelian: None,
        extra: Vec::new(),
    }
}

fn structure(label: &str, j: ComplexStructure<Rational>, expected: Expected) -> Structure {
    Structure {
        label: label.into(),
        j,
        expected,
    }
}

fn pairs(dim: usize, ps: &[(usize, usize)]) -> Result<ComplexStructure<Rational>> {
    ComplexStructure::from_pairs(dim, ps)
}

fn consecutive_pairs(dim: usize) -> Vec<(usize, usize)> {
    (0..dim / 2).map(|i| (2 * i, 2 * i + 1)).collect()
}

fn salamon(src: &str, ps: &Params) -> Result<LieAlgebra<Rational>> {
    parse_salamon(src, &|k| ps.scalar(k))
}

type BorrowedBracket<'a> = (usize, usize, &'a [(usize, Rational)]);

fn brackets(dim: usize, base: usize, list: &[BorrowedBracket]) -> Result<LieAlgebra<Rational>> {
    let owned: Vec<BracketSpec<Rational>> =
        list.iter().map(|(j, k, v)| (*j, *k, v.to_vec())).collect();
    Ok(LieAlgebra::from_brackets(dim, &owned)?.with_base(base))
}

fn unit_m(ps: &Params) -> Result<i64> {
    let m = ps.integer("m")?;
    if m < 3 {
        return Err(Error::Input(format!("m must be at least 3, got {m}")));
    }
    Ok(m)
}

fn int_range(ps: &Params, k: &str, lo: i64, hi: i64) -> Result<usize> {
    let n = ps.integer(k)?;
    if n < lo || n > hi {
        return Err(Error::Input(format!("{k} must lie in {lo}..={hi}, got {n}")));
    }
    Ok(n as usize)
}

fn period(q: Rational, inv: Invariance) -> (TimeValue, Invariance) {
    (TimeValue::pi(q), inv)
}

fn rank_one(psi_at: Vec<(usize, Rational)>, lambda: Rational, periods: Vec<(TimeValue, Invariance)>) -> Expected {
    Expected {
        psi_at,
        psi_rest_zero: true,
        verdict: Some("NoInvariantSection"),
        obstruction: Some("PsiVanishesOnCommutator"),
        lambda: Some(lambda),
        periods,
        ..Default::default()
    }
}

fn obstructed(psi_at: Vec<(usize, Rational)>) -> Expected {
    Expected {
        psi_at,
        psi_rest_zero: true,
        verdict: Some("NoInvariantSection"),
        obstruction: Some("ObstructedNotTorsion"),
        ..Default::default()
    }
}

fn gen(dim: usize, parts: Vec<DerivationPart>, time: TimeValue) -> Result<Generator> {
    Ok(Generator {
        derivation: StructuredDerivation::new(dim, parts)?,
        time,
    })
}

fn part(shape: PartShape) -> DerivationPart {
    DerivationPart::new(Monomial::one(), shape)
}

fn identity_rows(n: usize) -> Vec<Vec<String>> {
    (0..n)
        .map(|r| (0..n).map(|c| if r == c { "1" } else { "0" }.to_string()).collect())
        .collect()
}

fn int_identity(n: usize, sign: i64) -> Vec<Vec<i64>> {
    (0..n).map(|r| (0..n).map(|c| if r == c { sign } else { 0 }).collect()).collect()
}

/// Block diagonal integer matrix.
fn int_blocks(blocks: &[Vec<Vec<i64>>]) -> Vec<Vec<i64>> {
    let n: usize = blocks.iter().map(|b| b.len()).sum();
    let mut out = vec![vec![0; n]; n];
    let mut off = 0;
    for b in blocks {
        for (r, row) in b.iter().enumerate() {
            for (c, x) in row.iter().enumerate() {
                out[off + r][off + c] = *x;
            }
        }
        off += b.len();
    }
    out
}

fn nilradical_json(alg: &LieAlgebra<Rational>, idx: &[usize]) -> Result<crate::algebra::AlgebraJson> {
    Ok(alg.restrict(idx)?.to_json())
}

fn kodaira() -> Result<Instance> {
    // base 0: [e1,e2] = e3, [e0,e1] = e2, [e0,e2] = -e1
    let alg = brackets(
        4,
        0,
        &[(1, 2, &[(3, qi(1))]), (0, 1, &[(2, qi(1))]), (0, 2, &[(1, qi(-1))])],
    )?;
    let j = pairs(4, &[(0, 3), (1, 2)])?;
    let expected = rank_one(
        vec![(0, qi(-2))],
        qi(1),
        vec![period(qi(2), Invariance::Invariant), period(qi(1), Invariance::TorsionOrder { k: 2 })],
    );
    let nil = [1, 2, 3];
    let rot = PartShape::Rotation {
        planes: vec![Plane { i: 0, j: 1, omega: qi(1) }],
    };
    let cert = LatticeCertificate {
        name: "kodaira".into(),
        nilradical: nilradical_json(&alg, &nil)?,
        generators: vec![gen(3, vec![part(rot)], TimeValue::pi(qi(2)))?],
        conjugator: Conjugator::Matrix { rows: identity_rows(3) },
        claimed: Some(vec![int_identity(3, 1)]),
    };
    let mut inst = instance(alg, vec![structure("J", j, expected)]);
    inst.certificate = Some(cert);
    inst.ad_match = Some(AdMatch {
        nilradical: nil.to_vec(),
        generators: vec![0],
    });
    Ok(inst)
}

fn inoue_s0(ps: &Params) -> Result<Instance> {
    let b = ps.rational("b")?;
    let half = q(-1, 2);
    let alg = brackets(
        4,
        0,
        &[
            (0, 1, &[(1, qi(1))]),
            (0, 2, &[(2, half.clone()), (3, b.clone())]),
            (0, 3, &[(2, -b.clone()), (3, half)]),
        ],
    )?;
    let j = pairs(4, &[(0, 1), (2, 3)])?;
    let expected = obstructed(vec![(0, -qi(2) * b), (1, qi(1))]);
    Ok(instance(alg, vec![structure("J", j, expected)]))
}

fn g1() -> Result<Instance> {
    let src = "(e^{15},-e^{25},-e^{35},e^{45},0,0)";
    let alg = salamon(src, &Params::new())?;
    let j = pairs(6, &[(0, 3), (1, 2), (5, 4)])?;
    let mut inst = instance(alg, vec![structure("J", j, Expected::trivial())]);
    inst.shorthand = Some(src.into());
    inst.almost_abelian = Some(4);
    Ok(inst)
}

fn g2_alpha(ps: &Params) -> Result<Instance> {
    let src = "(alpha e^{15}+e^{25},-e^{15}+alpha e^{25},-alpha e^{35}+e^{45},-e^{35}-alpha e^{45},0,0)";
    let alg = salamon(src, ps)?;
    let j = pairs(6, &[(0, 1), (3, 2), (5, 4)])?;
    let mut inst = instance(alg, vec![structure("J", j, Expected::trivial())]);
    inst.shorthand = Some(src.into());
    inst.almost_abelian = Some(4);
    Ok(inst)
}

/// Lattice `(pi Z + t_m Z) x| P Z^{4n}` for `A` (rotations) and `B` (diagonal).
fn s_n_certificate(name: &str, nilradical: crate::algebra::AlgebraJson, n: usize, m: i64) -> Result<LatticeCertificate> {
    let dim = 4 * n;
    let mut planes = Vec::new();
    let mut entries = Vec::new();
    let mut columns = Vec::new();
    for b in 0..n {
        let o = 4 * b;
        planes.push(Plane { i: o, j: o + 1, omega: qi(1) });
        planes.push(Plane { i: o + 2, j: o + 3, omega: qi(-1) });
        entries.extend([qi(1), qi(1), qi(-1), qi(-1)]);
        for i in [o, o + 1] {
            columns.push(ColumnSpec::PairFirst { i, j: i + 2 });
            columns.push(ColumnSpec::PairSecond { i, j: i + 2 });
        }
    }
    let companion = vec![vec![0, -1], vec![1, m]];
    Ok(LatticeCertificate {
        name: name.into(),
        nilradical,
        generators: vec![
            gen(dim, vec![part(PartShape::Rotation { planes })], TimeValue::pi(qi(1)))?,
            gen(dim, vec![part(PartShape::Diagonal { entries })], unit_time(m)?)?,
        ],
        conjugator: Conjugator::Pattern { driver: 1, columns },
        claimed: Some(vec![int_identity(dim, -1), int_blocks(&vec![companion; 2 * n])]),
    })
}

fn nakamura_s(ps: &Params) -> Result<Instance> {
    let m = unit_m(ps)?;
    let alg = salamon(NAKAMURA_S, &Params::new())?;
    let abelian = Expected {
        abelian: Some(true),
        ..Expected::trivial()
    };
    let bi = Expected {
        abelian: Some(false),
        ..Expected::trivial()
    };
    let nil = [0, 1, 2, 3];
    let cert = s_n_certificate("nakamura_s", nilradical_json(&alg, &nil)?, 1, m)?;
    let mut inst = instance(
        alg,
        vec![
            structure("J", pairs(6, &[(0, 1), (2, 3), (4, 5)])?, abelian),
            structure("J~", pairs(6, &[(0, 1), (2, 3), (5, 4)])?, bi),
        ],
    );
    inst.shorthand = Some(NAKAMURA_S.into());
    inst.certificate = Some(cert);
    inst.ad_match = Some(AdMatch {
        nilradical: nil.to_vec(),
        generators: vec![4, 5],
    });
    Ok(inst)
}

fn nakamura_s_n(ps: &Params) -> Result<Instance> {
    let n = int_range(ps, "n", 1, 3)?;
    let m = unit_m(ps)?;
    let k = 4 * n;
    let mut a = Matrix::zeros(k, k);
    let mut b = Matrix::zeros(k, k);
    for blk in 0..n {
        let o = 4 * blk;
        a[(o + 1, o)] = qi(1);
        a[(o, o + 1)] = qi(-1);
        a[(o + 3, o + 2)] = qi(-1);
        a[(o + 2, o + 3)] = qi(1);
        for (i, s) in [1, 1, -1, -1].into_iter().enumerate() {
            b[(o + i, o + i)] = qi(s);
        }
    }
    let alg = LieAlgebra::semidirect(2, &LieAlgebra::abelian(k), &[a, b])?;
    let dim = k + 2;
    let mut tilde = consecutive_pairs(dim);
    tilde[0] = (1, 0);
    let nil: Vec<usize> = (2..dim).collect();
    let cert = s_n_certificate("nakamura_s_n", nilradical_json(&alg, &nil)?, n, m)?;
    let mut inst = instance(
        alg,
        vec![
            structure(
                "J",
                pairs(dim, &consecutive_pairs(dim))?,
                Expected {
                    abelian: Some(true),
                    ..Expected::trivial()
                },
            ),
            structure("J~", pairs(dim, &tilde)?, Expected::trivial()),
        ],
    );
    inst.certificate = Some(cert);
    inst.ad_match = Some(AdMatch {
        nilradical: nil,
        generators: vec![0, 1],
    });
    Ok(inst)
}

fn an1_i(ps: &Params) -> Result<Instance> {
    let n = int_range(ps, "n", 1, 3)?;
    let m = unit_m(ps)?;
    let (alg, j) = fp1_construct(&an1_i_data(n))?;
    let nd = 4 * n + 1;
    let nil: Vec<usize> = (0..nd).collect();
    let mut entries = vec![qi(0)];
    entries.extend(std::iter::repeat_n(qi(1), 2 * n));
    entries.extend(std::iter::repeat_n(qi(-1), 2 * n));
    let mut columns = vec![ColumnSpec::Basis { i: 0 }];
    columns.extend((1..=2 * n).map(|k| ColumnSpec::PairFirst { i: k, j: k + 2 * n }));
    columns.extend((1..=2 * n).map(|k| ColumnSpec::PairSecond { i: k, j: k + 2 * n }));
    // 1 + [[0, -I], [I, mI]]
    let mut claimed = vec![vec![0; nd]; nd];
    claimed[0][0] = 1;
    for k in 0..2 * n {
        claimed[1 + k][1 + 2 * n + k] = -1;
        claimed[1 + 2 * n + k][1 + k] = 1;
        claimed[1 + 2 * n + k][1 + 2 * n + k] = m;
    }
    let cert = LatticeCertificate {
        name: "an1_i".into(),
        nilradical: nilradical_json(&alg, &nil)?,
        generators: vec![gen(nd, vec![part(PartShape::Diagonal { entries })], unit_time(m)?)?],
        conjugator: Conjugator::Pattern { driver: 0, columns },
        claimed: Some(vec![claimed]),
    };
    let mut inst = instance(alg, vec![structure("J", j, Expected::trivial())]);
    inst.certificate = Some(cert);
    inst.ad_match = Some(AdMatch {
        nilradical: nil,
        generators: vec![nd],
    });
    Ok(inst)
}

/// Angles `q_j pi` with `q_j in {2, 1, 1/2} + 2Z` and zero sum.
fn rotation_angles(ps: &Params, len: usize) -> Result<Vec<Rational>> {
    let qs = ps.list("q")?;
    if qs.len() != len {
        return Err(Error::Input(format!("q needs {len} entries, got {}", qs.len())));
    }
    let two = qi(2);
    for x in &qs {
        let r = x - (x / &two).floor() * &two;
        if !(r.is_zero() || r.is_one() || r == q(1, 2)) {
            return Err(Error::Input(format!("angle {x} pi is not in {{2pi, pi, pi/2}} + 2pi Z")));
        }
    }
    let sum: Rational = qs.iter().sum();
    if !sum.is_zero() {
        return Err(Error::Input(format!("angles must sum to zero, got {sum} pi")));
    }
    Ok(qs)
}

fn rotation_planes(qs: &[Rational], offset: usize) -> Vec<Plane> {
    qs.iter()
        .enumerate()
        .map(|(k, w)| Plane {
            i: offset + 2 * k,
            j: offset + 2 * k + 1,
            omega: w.clone(),
        })
        .collect()
}

fn an1_ii(ps: &Params) -> Result<Instance> {
    let n = int_range(ps, "n", 1, 4)?;
    let qs = rotation_angles(ps, n)?;
    // the algebra uses q_j in place of q_j pi
    let (alg, j) = fp1_construct(&an1_ii_data(&qs))?;
    let nd = 2 * n + 1;
    let nil: Vec<usize> = (0..nd).collect();
    let rot = DerivationPart::new(
        Monomial::pi(qi(1)),
        PartShape::Rotation {
            planes: rotation_planes(&qs, 1),
        },
    );
    let cert = LatticeCertificate {
        name: "an1_ii".into(),
        nilradical: nilradical_json(&alg, &nil)?,
        generators: vec![gen(nd, vec![rot], TimeValue::Rational { q: qi(1) })?],
        conjugator: Conjugator::Matrix { rows: identity_rows(nd) },
        claimed: None,
    };
    let mut inst = instance(alg, vec![structure("J", j, Expected::trivial())]);
    inst.certificate = Some(cert);
    Ok(inst)
}

fn an2_i(ps: &Params) -> Result<Instance> {
    let n = int_range(ps, "n", 2, 3)?;
    let m = unit_m(ps)?;
    let (v1, v2) = (ps.rational("v1")?, ps.rational("v2")?);
    if v1.is_zero() && v2.is_zero() {
        return Err(Error::Input("v1 and v2 cannot both vanish".into()));
    }
    let (alg, j) = fp2_construct(&an2_i_data(n, v1.clone(), v2.clone()))?;
    let nd = 4 * n - 1;
    let last = nd - 1;
    let half = 2 * n - 2;
    let nil: Vec<usize> = (0..nd).collect();
    let mut entries = vec![qi(0), qi(0)];
    entries.extend(std::iter::repeat_n(qi(1), half));
    entries.extend(std::iter::repeat_n(qi(-1), half));
    entries.push(qi(0));
    let mut shear = Matrix::zeros(nd, nd);
    shear[(0, last)] = v1;
    shear[(1, last)] = v2;
    let mut columns = vec![ColumnSpec::Basis { i: 0 }, ColumnSpec::ShearImage { i: last }];
    columns.extend((2..2 + half).map(|k| ColumnSpec::PairFirst { i: k, j: k + half }));
    columns.extend((2..2 + half).map(|k| ColumnSpec::PairSecond { i: k, j: k + half }));
    columns.push(ColumnSpec::Basis { i: last });
    let cert = LatticeCertificate {
        name: "an2_i".into(),
        nilradical: nilradical_json(&alg, &nil)?,
        generators: vec![gen(
            nd,
            vec![part(PartShape::Diagonal { entries }), part(PartShape::Nilpotent { matrix: shear })],
            unit_time(m)?,
        )?],
        conjugator: Conjugator::Pattern { driver: 0, columns },
        claimed: None,
    };
    let mut inst = instance(alg, vec![structure("J", j, Expected::trivial())]);
    inst.certificate = Some(cert);
    inst.ad_match = Some(AdMatch {
        nilradical: nil,
        generators: vec![nd],
    });
    Ok(inst)
}

fn an2_ii(ps: &Params) -> Result<Instance> {
    let n = int_range(ps, "n", 2, 4)?;
    let qs = rotation_angles(ps, n - 1)?;
    let (v1, v2) = (ps.rational("v1")?, ps.rational("v2")?);
    if v1.is_zero() {
        return Err(Error::Input("v1 must be nonzero".into()));
    }
    let (alg, j) = fp2_construct(&an2_ii_data(&qs, v1.clone(), v2.clone()))?;
    let nd = 2 * n + 1;
    let last = nd - 1;
    let nil: Vec<usize> = (0..nd).collect();
    let mut shear = Matrix::zeros(nd, nd);
    shear[(0, last)] = v1.clone();
    shear[(1, last)] = v2;
    let rot = DerivationPart::new(
        Monomial::pi(qi(1)),
        PartShape::Rotation {
            planes: rotation_planes(&qs, 2),
        },
    );
    let mut columns = vec![ColumnSpec::ShearImage { i: last }, ColumnSpec::Basis { i: last }];
    columns.extend((2..last).map(|i| ColumnSpec::Basis { i }));
    columns.push(ColumnSpec::Scaled { i: 1, c: -v1.recip() });
    let cert = LatticeCertificate {
        name: "an2_ii".into(),
        nilradical: nilradical_json(&alg, &nil)?,
        generators: vec![gen(
            nd,
            vec![rot, part(PartShape::Nilpotent { matrix: shear })],
            TimeValue::Rational { q: qi(1) },
        )?],
        conjugator: Conjugator::Pattern { driver: 0, columns },
        claimed: None,
    };
    let mut inst = instance(alg, vec![structure("J", j, Expected::trivial())]);
    inst.certificate = Some(cert);
    Ok(inst)
}

fn g_p(ps: &Params) -> Result<Instance> {
    let pv = ps.rational("p")?;
    let m = unit_m(ps)?;
    // columns A e_i on R^5, then e6 acts by A
    let cols: [[Rational; 5]; 5] = [
        [-pv.clone(), qi(1), qi(0), qi(0), qi(0)],
        [qi(-1), -pv.clone(), qi(0), qi(0), qi(0)],
        [qi(0), qi(0), pv.clone(), qi(-2), qi(0)],
        [qi(0), qi(0), qi(2), pv.clone(), qi(0)],
        [qi(0), qi(0), qi(0), qi(0), qi(0)],
    ];
    let cols: Vec<Vec<Rational>> = cols.iter().map(|c| c.to_vec()).collect();
    let a = Matrix::from_cols(5, &cols);
    let mut alg = LieAlgebra::abelian(6);
    for i in 0..5 {
        let mut v = a.col(i);
        if !vec::is_zero(&v) {
            v.push(qi(0));
            alg.set_bracket(5, i, v)?;
        }
    }
    alg.validate()?;
    let j = pairs(6, &[(0, 1), (2, 3), (4, 5)])?;
    let expected = rank_one(
        vec![(5, qi(2))],
        qi(-1),
        vec![period(qi(1), Invariance::TorsionOrder { k: 2 }), period(qi(2), Invariance::Invariant)],
    );
    // pi A_p with p = t/pi, t = log u, u - 1/u = m
    let diag = DerivationPart::new(
        parse_monomial("pi^-1*t")?,
        PartShape::Diagonal {
            entries: vec![qi(-1), qi(-1), qi(1), qi(1), qi(0)],
        },
    );
    let rot = part(PartShape::Rotation {
        planes: vec![Plane { i: 0, j: 1, omega: qi(1) }, Plane { i: 2, j: 3, omega: qi(-2) }],
    });
    let derivation = StructuredDerivation::new(5, vec![diag, rot])?.with_unit(UnitSpec { m, norm: -1 });
    let companion = vec![vec![0, 1], vec![1, m]];
    let cert = LatticeCertificate {
        name: "g_p".into(),
        nilradical: LieAlgebra::<Rational>::abelian(5).to_json(),
        generators: vec![Generator {
            derivation,
            time: TimeValue::pi(qi(1)),
        }],
        conjugator: Conjugator::Pattern {
            driver: 0,
            columns: vec![
                ColumnSpec::PairFirst { i: 0, j: 2 },
                ColumnSpec::PairSecond { i: 0, j: 2 },
                ColumnSpec::PairFirst { i: 1, j: 3 },
                ColumnSpec::PairSecond { i: 1, j: 3 },
                ColumnSpec::Basis { i: 4 },
            ],
        },
        claimed: Some(vec![int_blocks(&[companion.clone(), companion, vec![vec![1]]])]),
    };
    let mut inst = instance(alg, vec![structure("J", j, expected)]);
    inst.certificate = Some(cert);
    Ok(inst)
}

fn s_6_44() -> Result<Instance> {
    let src = "(e^{23},e^{36},-e^{26},e^{26}+e^{56},e^{36}-e^{46},0)";
    let alg = salamon(src, &Params::new())?;
    let j = pairs(6, &[(0, 5), (1, 2), (3, 4)])?;
    let expected = Expected {
        psi_rest_zero: false,
        ..rank_one(vec![(5, qi(4))], qi(-2), vec![period(qi(1), Invariance::Invariant)])
    };
    let nil = [0, 1, 2, 3, 4];
    let rot = part(PartShape::Rotation {
        planes: vec![Plane { i: 1, j: 2, omega: qi(-1) }, Plane { i: 3, j: 4, omega: qi(-1) }],
    });
    let mut nilp = Matrix::zeros(5, 5);
    nilp[(3, 1)] = qi(1);
    nilp[(4, 2)] = qi(1);
    let rows: Vec<Vec<String>> = [
        ["1", "0", "0", "0", "0"],
        ["0", "0", "0", "0", "1"],
        ["0", "0", "1", "0", "0"],
        ["0", "0", "0", "-pi", "0"],
        ["0", "-pi", "0", "0", "-1"],
    ]
    .iter()
    .map(|r| r.iter().map(|x| x.to_string()).collect())
    .collect();
    let block = vec![vec![-1, 1], vec![0, -1]];
    let cert = LatticeCertificate {
        name: "s_6_44".into(),
        nilradical: nilradical_json(&alg, &nil)?,
        generators: vec![gen(
            5,
            vec![rot, part(PartShape::Nilpotent { matrix: nilp })],
            TimeValue::pi(qi(1)),
        )?],
        conjugator: Conjugator::Matrix { rows },
        claimed: Some(vec![int_blocks(&[vec![vec![1]], block.clone(), block])]),
    };
    let mut inst = instance(alg, vec![structure("J", j, expected)]);
    inst.shorthand = Some(src.into());
    inst.certificate = Some(cert);
    inst.ad_match = Some(AdMatch {
        nilradical: nil.to_vec(),
        generators: vec![5],
    });
    Ok(inst)
}

fn line(check: &str, ok: bool, witness: impl FnOnce() -> String) -> CheckLine {
    CheckLine {
        check: check.into(),
        passed: ok,
        witness: (!ok).then(witness),
    }
}

fn nakamura_splitting(ps: &Params) -> Result<Instance> {
    let (r, s) = (ps.rational("r")?, ps.rational("s")?);
    let m = unit_m(ps)?;
    let rr = r.clone() * r.clone() + s.clone() * s.clone();
    if rr >= qi(1) {
        return Err(Error::Input(format!("need r^2 + s^2 < 1, got {rr}")));
    }
    let d = rr.clone() - qi(1);
    let alg = salamon(NAKAMURA_S, &Params::new())?;
    // columns J~ f_i
    let mut jt = Matrix::zeros(6, 6);
    jt[(1, 0)] = qi(-1);
    jt[(0, 1)] = qi(1);
    jt[(3, 2)] = qi(1);
    jt[(2, 3)] = qi(-1);
    jt[(4, 4)] = qi(-2) * s.clone() / d.clone();
    jt[(5, 4)] = (rr.clone() - qi(2) * r.clone() + qi(1)) / d.clone();
    jt[(4, 5)] = -(rr.clone() + qi(2) * r.clone() + qi(1)) / d.clone();
    jt[(5, 5)] = qi(2) * s.clone() / d;
    let jt = ComplexStructure::new(jt)?;
    let expected = rank_one(vec![(4, qi(4))], qi(-2), vec![period(qi(1), Invariance::Invariant)]);

    // (g, J_B) and the isomorphism phi onto (s, J~)
    let g = salamon(G_RS, ps)?;
    let jb = pairs(6, &consecutive_pairs(6))?;
    let mut phi = Matrix::zeros(6, 6);
    phi[(3, 0)] = qi(1);
    phi[(2, 1)] = qi(-1);
    phi[(1, 2)] = qi(1);
    phi[(0, 3)] = qi(1);
    phi[(4, 4)] = -s.clone();
    phi[(5, 4)] = qi(1) - r.clone();
    phi[(4, 5)] = r.clone() + qi(1);
    phi[(5, 5)] = -s.clone();
    let hom = (0..6).flat_map(|a| (a + 1..6).map(move |b| (a, b))).find(|&(a, b)| {
        let lhs = phi.mul_vec(&g.bracket_basis(a, b));
        lhs != alg.bracket(&phi.col(a), &phi.col(b))
    });
    let inter = phi.mul(jb.matrix()) == jt.matrix().mul(&phi);
    let psi_g = psi(&g, &jb);
    let psi_s = psi(&alg, &jt);
    let pulled: Vec<Rational> = (0..6).map(|i| psi_s.eval(&phi.col(i))).collect();
    let want_g = [(4, -qi(4) * s.clone()), (5, qi(4) * (r.clone() + qi(1)))];
    let extra = vec![
        line("J_B integrable", is_integrable(&g, &jb)?, || "Nijenhuis tensor is nonzero".into()),
        line("phi is a homomorphism", hom.is_none(), || format!("fails on {:?}", hom.unwrap())),
        line("phi J_B = J~ phi", inter, || "matrices differ".into()),
        line("psi_g = psi_s o phi", psi_g.values == pulled, || format!("{:?} vs {:?}", psi_g.values, pulled)),
        line(
            "psi_g values",
            want_g.iter().all(|(i, v)| psi_g.at(*i) == v) && (0..4).all(|i| psi_g.at(i).is_zero()),
            || format!("{:?}", psi_g.values),
        ),
    ];
    let nil = [0, 1, 2, 3];
    let cert = s_n_certificate("nakamura_splitting_jb", nilradical_json(&alg, &nil)?, 1, m)?;
    let mut inst = instance(alg, vec![structure("J~_B", jt, expected)]);
    inst.shorthand = Some(NAKAMURA_S.into());
    inst.certificate = Some(cert);
    inst.ad_match = Some(AdMatch {
        nilradical: nil.to_vec(),
        generators: vec![4, 5],
    });
    inst.extra = extra;
    Ok(inst)
}

/// Four dimensional `[e2,e3] = e1, [e2,e4] = e2, [e3,e4] = -e3` with `J e1 = e2, J e3 = e4`.
pub(crate) fn ghat_seed() -> Result<(LieAlgebra<Rational>, ComplexStructure<Rational>, SubspaceBasis<Rational>)> {
    let g = brackets(
        4,
        1,
        &[(1, 2, &[(0, qi(1))]), (1, 3, &[(1, qi(1))]), (2, 3, &[(2, qi(-1))])],
    )?;
    let j = pairs(4, &[(0, 1), (2, 3)])?;
    let plus = SubspaceBasis::span(4, [vec::unit(4, 0), vec::unit(4, 2)]);
    Ok((g, j, plus))
}

fn hypercomplex_ghat(ps: &Params) -> Result<Instance> {
    let m = unit_m(ps)?;
    let (g, j, plus) = ghat_seed()?;
    let (alg, t) = realification_double(&g, &j, &plus)?;
    let structures = vec![
        structure(
            "J1",
            t.j[0].clone(),
            rank_one(vec![(7, qi(-4))], qi(2), vec![period(qi(1), Invariance::Invariant)]),
        ),
        structure("J2", t.j[1].clone(), obstructed(vec![(2, qi(-4))])),
        structure("J3", t.j[2].clone(), obstructed(vec![(6, qi(-4))])),
    ];
    let nil = [0, 1, 2, 4, 5, 6];
    let rot = part(PartShape::Rotation {
        planes: vec![Plane { i: 1, j: 4, omega: qi(-1) }, Plane { i: 2, j: 5, omega: qi(1) }],
    });
    let diag = part(PartShape::Diagonal {
        entries: [0, -1, 1, 0, -1, 1].into_iter().map(qi).collect(),
    });
    let b = vec![vec![1, 0, 0], vec![0, 0, -1], vec![0, 1, m]];
    let cert = LatticeCertificate {
        name: "hypercomplex_ghat".into(),
        nilradical: nilradical_json(&alg, &nil)?,
        generators: vec![gen(6, vec![rot], TimeValue::pi(qi(1)))?, gen(6, vec![diag], unit_time(m)?)?],
        conjugator: Conjugator::Pattern {
            driver: 1,
            columns: vec![
                ColumnSpec::Basis { i: 0 },
                ColumnSpec::PairFirst { i: 1, j: 2 },
                ColumnSpec::PairSecond { i: 1, j: 2 },
                ColumnSpec::Basis { i: 3 },
                ColumnSpec::PairFirst { i: 4, j: 5 },
                ColumnSpec::PairSecond { i: 4, j: 5 },
            ],
        },
        claimed: Some(vec![
            int_blocks(&[vec![vec![1]], vec![vec![-1, 0], vec![0, -1]], vec![vec![1]], vec![vec![-1, 0], vec![0, -1]]]),
            int_blocks(&[b.clone(), b]),
        ]),
    };
    let mut inst = instance(alg, structures);
    inst.triple = Some(t);
    inst.certificate = Some(cert);
    inst.ad_match = Some(AdMatch {
        nilradical: nil.to_vec(),
        generators: vec![7, 3],
    });
    Ok(inst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::check;

    fn assert_passes(name: &str, ps: &Params) {
        let inst = build(name, ps).unwrap();
        let rep = check(&inst);
        assert!(rep.passed, "{name} {ps:?}: {:#?}", rep.first_failure());
    }

    #[test]
    fn every_entry_passes_at_defaults() {
        for info in list() {
            assert_passes(info.name, &Params::new());
        }
    }

    #[test]
    fn certificates_for_all_units() {
        for info in list().iter().filter(|i| i.has_param("m")) {
            for m in 3..=10 {
                assert_passes(info.name, &Params::new().with("m", m));
            }
        }
    }

    #[test]
    fn families() {
        for n in 1..=3 {
            assert_passes("nakamura_s_n", &Params::new().with("n", n).with("m", 4));
        }
        assert_passes("an1_i", &Params::new().with("n", 2));
        assert_passes("an1_ii", &Params::new().with("n", 3).with("q", "1/2,5/2,-3"));
        assert_passes("an2_i", &Params::new().with("n", 3).with("v1", 2).with("v2", -1));
        assert_passes("an2_ii", &Params::new().with("n", 4).with("q", "1,1/2,-3/2").with("v1", 3));
        assert_passes("g_p", &Params::new().with("p", "1/3"));
        assert_passes("g2_alpha", &Params::new().with("alpha", "-5/2"));
        assert_passes("inoue_s0", &Params::new().with("b", "3/2"));
        for (r, s) in [("1/2", "1/3"), ("-2/3", "1/4"), ("0", "-9/10")] {
            assert_passes("nakamura_splitting_jb", &Params::new().with("r", r).with("s", s));
        }
    }

    #[test]
    fn bad_parameters() {
        assert_eq!(build("nope", &Params::new()).unwrap_err(), Error::UnknownEntry("nope".into()));
        assert_eq!(
            build("kodaira", &Params::new().with("m", 3)).unwrap_err(),
            Error::UnknownParameter("m".into())
        );
        for (name, ps) in [
            ("an1_ii", Params::new().with("q", "1,1")),
            ("an1_ii", Params::new().with("q", "1/3,-1/3")),
            ("an1_ii", Params::new().with("q", "1,-1,0")),
            ("nakamura_splitting_jb", Params::new().with("r", 1)),
            ("nakamura_s_n", Params::new().with("n", 4)),
            ("g_p", Params::new().with("m", 2)),
            ("g_p", Params::new().with("p", "x")),
        ] {
            assert!(matches!(build(name, &ps), Err(Error::Input(_))), "{name} {ps:?}");
        }
    }

    #[test]
    fn list_is_stable() {
        let names: Vec<_> = list().iter().map(|e| e.name).collect();
        for n in ["kodaira", "inoue_s0", "hypercomplex_ghat"] {
            assert!(names.contains(&n));
        }
        assert_eq!(names[0], "kodaira");
        assert_eq!(names, list().iter().map(|e| e.name).collect::<Vec<_>>());
    }

    #[test]
    fn inoue_is_obstructed() {
        let inst = build("inoue_s0", &Params::new()).unwrap();
        let j = &inst.structures[0].j;
        let p = psi(&inst.algebra, j);
        assert_eq!(p.values, vec![qi(-2), qi(1), qi(0), qi(0)]);
    }

    #[test]
    fn wrong_expectation_is_reported() {
        let mut inst = build("kodaira", &Params::new()).unwrap();
        inst.structures[0].expected.lambda = Some(qi(2));
        let rep = check(&inst);
        assert!(!rep.passed);
        assert_eq!(rep.first_failure().unwrap().check, "J: lambda");
    }

    #[test]
    fn json_export_has_expectations() {
        let inst = build("g_p", &Params::new()).unwrap();
        let v = inst.to_json();
        assert_eq!(v["structures"][0]["expected"]["psi"]["e6"], "2");
        assert_eq!(v["params"]["m"], "3");
        assert_eq!(v["certificate"]["generators"][0]["time"]["type"], "pi");
    }
}
