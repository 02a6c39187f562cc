//! Oracle cases: every frozen fixture value and convention flag, recomputed with the dense
//! brute-force algebra and compared with what the fixtures carry.

use std::collections::BTreeMap;

use msplect_core::fixtures::{self, ComomentumFixture, PairFixture};
use msplect_core::g2::{self, G2Data};
use msplect_core::multisymplectic::Sign;
use msplect_core::phase_space::PhaseSpace;
use msplect_core::{Chart, LieAlgebra, MultiVec, Polynomial, WedgePower};
use num_traits::Zero;

use super::dense::{field_for, field_from, form_from, index_sets, monomials, primitive, q, solve, sort_signed, zeta, DForm, Poly, VField, Q};

pub struct Outcome {
    pub name: String,
    pub ok: bool,
    pub lines: Vec<String>,
}

impl Outcome {
    fn new(name: &str) -> Self {
        Outcome {
            name: name.to_string(),
            ok: true,
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, line: String) {
        self.ok &= ok;
        self.lines.push(format!("{} {}", if ok { "ok  " } else { "FAIL" }, line));
    }
}

pub fn case_names() -> Vec<String> {
    let mut out: Vec<String> = fixtures::comomentum_fixtures().iter().map(|f| format!("comomentum/{}", f.name)).collect();
    out.extend(fixtures::pair_fixtures().iter().map(|f| format!("pair/{}", f.label)));
    out.extend(["g2/standard", "g2/torus"].map(String::from));
    out.extend(LIFTS.iter().map(|(name, ..)| format!("lift/{name}")));
    out
}

pub fn run(name: &str) -> Outcome {
    let (kind, rest) = name.split_once('/').expect("case names have a kind prefix");
    match kind {
        "comomentum" => {
            let fx = fixtures::comomentum_fixtures().into_iter().find(|f| f.name == rest).expect("fixture");
            comomentum_case(name, &fx)
        }
        "pair" => {
            let fx = fixtures::pair_fixtures().into_iter().find(|f| f.label == rest).expect("fixture");
            pair_case(name, &fx)
        }
        "g2" if rest == "standard" => g2_standard_case(name),
        "g2" => g2_torus_case(name),
        "lift" => {
            let (_, n, k, field) = LIFTS.iter().find(|(l, ..)| *l == rest).expect("lift case");
            lift_case(name, *n, *k, field())
        }
        _ => panic!("unknown case {name}"),
    }
}

fn sign_name(s: Option<Sign>) -> &'static str {
    match s {
        Some(Sign::Plus) => "plus",
        Some(Sign::Minus) => "minus",
        None => "neither",
    }
}

/// `∂(ξ_1∧…∧ξ_k) = Σ_{a<b} (−1)^{a+b}[ξ_a,ξ_b]∧ξ_1…ξ̂_a…ξ̂_b…ξ_k`.
fn boundary(g: &LieAlgebra, p: &WedgePower) -> BTreeMap<Vec<usize>, Q> {
    let mut out: BTreeMap<Vec<usize>, Q> = BTreeMap::new();
    for (b, c) in p.terms() {
        let idx = b.indices();
        for a in 0..idx.len() {
            for bb in a + 1..idx.len() {
                let s = if (a + bb) % 2 == 0 { q(1) } else { q(-1) };
                let rest: Vec<usize> = idx.iter().enumerate().filter(|(i, _)| *i != a && *i != bb).map(|(_, x)| *x).collect();
                for m in 0..g.dim() {
                    let sc = g.structure_constant(idx[a], idx[bb], m);
                    if sc.is_zero() {
                        continue;
                    }
                    let mut list = vec![m];
                    list.extend_from_slice(&rest);
                    if let Some((t, sorted)) = sort_signed(&list) {
                        *out.entry(sorted).or_insert_with(Q::zero) += c * sc * &s * t;
                    }
                }
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn comomentum_case(name: &str, fx: &ComomentumFixture) -> Outcome {
    let mut out = Outcome::new(name);
    let dim = fx.chart.dim();
    let omega = form_from(&fx.omega);
    let n = fx.omega.degree() - 1;
    let gens: Vec<VField> = fx.action.generators().iter().map(field_from).collect();
    let g = fx.action.algebra();
    if !fx.weak {
        let expected: usize = (1..=n.min(g.dim())).map(|k| index_sets(g.dim(), k).len()).sum();
        out.check(fx.components.len() == expected, format!("{} components cover every basis wedge", fx.components.len()));
    }
    for c in &fx.components {
        let k = c.p.degree();
        out.check(boundary(g, &c.p).is_empty(), format!("{}: argument has zero boundary", c.label));
        let mut vp = DForm::zero(dim);
        for (b, coeff) in c.p.terms() {
            let fields: Vec<VField> = b.indices().iter().map(|&i| gens[i].clone()).collect();
            vp = vp.add(&omega.interior_wedge(&fields).scale(coeff));
        }
        let plus = vp.scale(&zeta(k));
        let minus = vp.scale(&-zeta(k));
        if let Some(reading) = &c.reading {
            let d = form_from(reading).d();
            let resolved = if d == plus {
                Some(Sign::Plus)
            } else if d == minus {
                Some(Sign::Minus)
            } else {
                None
            };
            out.check(
                resolved == c.convention,
                format!("{}: displayed value satisfies {} (recorded {})", c.label, sign_name(resolved), sign_name(c.convention)),
            );
        }
        let formal = form_from(&c.formal);
        out.check(formal.d() == minus, format!("{}: formal value satisfies the formal equation", c.label));
        let bound = minus.coeff_degree() + 1;
        match primitive(&minus, n - k + 1, bound) {
            Some(sol) => out.check(
                formal.sub(&sol).d().is_zero(),
                format!("{}: brute-force primitive (degree <= {bound}) differs from the fixture by a closed form", c.label),
            ),
            None => out.check(false, format!("{}: no primitive of degree <= {bound}", c.label)),
        }
    }
    out
}

fn pair_case(name: &str, fx: &PairFixture) -> Outcome {
    let mut out = Outcome::new(name);
    let omega = form_from(&fx.omega);
    let da = form_from(&fx.form).d();
    let xw = omega.interior(&field_from(&fx.displayed_field));
    let resolved = if da == xw {
        Some(Sign::Plus)
    } else if da == xw.scale(&q(-1)) {
        Some(Sign::Minus)
    } else {
        None
    };
    out.check(
        resolved == Some(fx.convention),
        format!("displayed field satisfies {} (recorded {})", sign_name(resolved), sign_name(Some(fx.convention))),
    );
    let solved = field_for(&omega, &da.scale(&q(-1)), da.coeff_degree() + 1);
    out.check(
        solved.as_ref() == Some(&field_from(&fx.formal_field)),
        "brute-force solve of X⌟ω = −dα matches the recorded formal field".to_string(),
    );
    out
}

/// `(e_i⌟φ)∧(e_j⌟φ)∧φ` as a multiple of `dx¹…dx⁷`.
fn bilinear(phi: &DForm) -> Vec<Vec<Q>> {
    let all: Vec<usize> = (0..7).collect();
    let e = |i| VField::partial(7, i);
    (0..7)
        .map(|i| {
            (0..7)
                .map(|j| {
                    let top = phi.interior(&e(i)).wedge(&phi.interior(&e(j))).wedge(phi);
                    top.comps.get(&all).and_then(|p| p.terms.get(&vec![0; 7])).cloned().unwrap_or_else(Q::zero)
                })
                .collect()
        })
        .collect()
}

/// Checks `B = −6·s·δ` and returns `s`, the orientation of the induced volume.
fn metric_check(out: &mut Outcome, phi: &DForm) -> Option<Q> {
    let b = bilinear(phi);
    let s = -b[0][0].clone() / q(6);
    let ok = (s == q(1) || s == q(-1))
        && (0..7).all(|i| (0..7).all(|j| b[i][j] == if i == j { q(-6) * &s } else { Q::zero() }));
    out.check(ok, format!("metric identity on all 28 pairs, volume sign {s}"));
    ok.then_some(s)
}

/// Solves `e_I∧ψ = φ_I·vol` for all 3-sets `I` over the 35 constant coefficients of the 4-form `ψ`.
fn solve_psi(phi: &DForm, s: &Q) -> Option<DForm> {
    let sets = index_sets(7, 3);
    let unknowns = index_sets(7, 4);
    let all: Vec<usize> = (0..7).collect();
    let top = |f: &DForm| f.comps.get(&all).and_then(|p| p.terms.get(&vec![0; 7])).cloned().unwrap_or_else(Q::zero);
    let columns: Vec<BTreeMap<Vec<usize>, Q>> = unknowns
        .iter()
        .map(|j| {
            let ej = DForm::basis(7, j, q(1));
            sets.iter().map(|i| (i.clone(), top(&DForm::basis(7, i, q(1)).wedge(&ej)))).filter(|(_, v)| !v.is_zero()).collect()
        })
        .collect();
    let rhs: BTreeMap<Vec<usize>, Q> = sets
        .iter()
        .filter_map(|i| {
            let c = phi.comps.get(i)?.terms.get(&vec![0; 7])?.clone();
            Some((i.clone(), c * s))
        })
        .collect();
    let x = solve(&columns, &rhs)?;
    let mut psi = DForm::zero(7);
    for (c, j) in x.iter().zip(&unknowns) {
        psi = psi.add(&DForm::basis(7, j, c.clone()));
    }
    Some(psi)
}

fn structure_checks(out: &mut Outcome, g2: &G2Data) -> Option<Q> {
    let phi = form_from(g2.phi());
    let s = metric_check(out, &phi)?;
    let all: Vec<usize> = (0..7).collect();
    out.check(form_from(g2.vol()) == DForm::basis(7, &all, s.clone()), "volume form matches the engine".to_string());
    let psi = solve_psi(&phi, &s);
    out.check(psi.as_ref() == Some(&form_from(g2.psi())), "brute-force ψ = *φ matches the engine".to_string());
    out.check(phi.d().is_zero() && psi.is_some_and(|p| p.d().is_zero()), "dφ = dψ = 0".to_string());
    Some(s)
}

fn g2_standard_case(name: &str) -> Outcome {
    let mut out = Outcome::new(name);
    let g2 = G2Data::standard();
    structure_checks(&mut out, &g2);
    let psi = form_from(g2.psi());
    let c4567 = psi.comps.get(&vec![3, 4, 5, 6]).and_then(|p| p.terms.get(&vec![0; 7])).cloned();
    out.check(c4567 == Some(q(1)), "ψ has coefficient 1 on dx4567".to_string());
    let phi = form_from(g2.phi());
    out.check(phi.comps.len() == 7, "φ0 has 7 nonzero components".to_string());
    let cross = phi.interior(&VField::partial(7, 0)).interior(&VField::partial(7, 1));
    let mut x = VField::zero(7);
    for (idx, p) in &cross.comps {
        x.0[idx[0]] = p.clone();
    }
    let engine = g2.cross(&MultiVec::partial(7, 0), &MultiVec::partial(7, 1));
    out.check(x == VField::partial(7, 2) && field_from(&engine) == x, "e1 × e2 = e3".to_string());
    let printed = form_from(&g2::phi0_printed(&g2::standard_chart()).expect("printed form"));
    let b = bilinear(&printed);
    let neg = (0..7).filter(|&i| b[i][i] < Q::zero()).count();
    let off = (0..7).all(|i| (0..7).all(|j| i == j || b[i][j].is_zero()));
    out.check(off && neg == 3, format!("printed φ0 induces a split form ({neg} negative, {} positive diagonal entries of B)", 7 - neg));
    out
}

fn g2_torus_case(name: &str) -> Outcome {
    let mut out = Outcome::new(name);
    let g2 = G2Data::torus();
    let s = structure_checks(&mut out, &g2);
    out.check(s == Some(q(-1)), "torus chart is negatively oriented".to_string());
    let phi = form_from(g2.phi());
    let a = field_from(&g2::torus::generator_real(0, 2));
    let b = field_from(&g2::torus::generator_real(1, 2));
    let ba = phi.interior(&a).interior(&b);
    let df2 = form_from(&g2::torus::f2()).d();
    out.check(ba == df2.scale(&q(-1)), "B⌟A⌟φ = −d(¼Re(z1z2z3))".to_string());
    let d_re = form_from(&g2::torus::re_z1z2z3()).d();
    let sign = q(fixtures::TORUS_CROSS_SIGN as i64);
    out.check(ba.scale(&q(4)) == d_re.scale(&sign), format!("4(A×B)♭ = ({sign})·d(Re(z1z2z3))"));
    let engine = form_from(&g2.cross(&g2::torus::generator_real(0, 2), &g2::torus::generator_real(1, 2)).flat());
    out.check(engine == ba, "engine cross product agrees with B⌟A⌟φ".to_string());
    out
}

type LiftCase = (&'static str, usize, usize, fn() -> MultiVec);

const LIFTS: [LiftCase; 4] = [
    ("scaling on the line", 1, 1, || MultiVec::monomial(1, &[0], Polynomial::var(0))),
    ("quadratic field on R2, k=1", 2, 1, || {
        &MultiVec::monomial(2, &[0], Polynomial::var(1)) + &MultiVec::monomial(2, &[1], Polynomial::var(0).pow(2))
    }),
    ("quadratic field on R3, k=2", 3, 2, || {
        &MultiVec::monomial(3, &[2], &Polynomial::var(0) * &Polynomial::var(1)) + &MultiVec::monomial(3, &[0], Polynomial::var(2))
    }),
    ("rotation on R3, k=3", 3, 3, || {
        &MultiVec::monomial(3, &[0], Polynomial::var(1)) - &MultiVec::monomial(3, &[1], Polynomial::var(0))
    }),
];

fn extend(p: &Poly, dim: usize) -> Poly {
    let mut out = Poly::zero(dim);
    for (e, c) in &p.terms {
        let mut f = e.clone();
        f.resize(dim, 0);
        out.add_term(f, c.clone());
    }
    out
}

/// The unique `Z` with `π_*Z = Y` and `L_Zθ = 0`, by brute force over vertical components.
fn lift_case(name: &str, n: usize, k: usize, y: MultiVec) -> Outcome {
    let mut out = Outcome::new(name);
    let space = PhaseSpace::build(Chart::numbered("q", n), k).expect("phase space");
    let dim = space.dim();
    let theta = form_from(space.theta());
    let yb = field_from(&y);
    let mut z0 = VField::zero(dim);
    for i in 0..n {
        z0.0[i] = extend(&yb.0[i], dim);
    }
    let bound = yb.0.iter().map(Poly::degree).max().unwrap_or(0) + 1;
    let mut basis = Vec::new();
    for j in n..dim {
        for e in monomials(dim, bound) {
            let mut v = VField::zero(dim);
            v.0[j] = Poly::monomial(dim, e);
            basis.push(v);
        }
    }
    let columns: Vec<_> = basis.iter().map(|v| v.lie(&theta).flat()).collect();
    let rhs = z0.lie(&theta).scale(&q(-1)).flat();
    let Some(x) = solve(&columns, &rhs) else {
        out.check(false, "no lift preserving θ".to_string());
        return out;
    };
    let mut z = z0;
    for (c, v) in x.iter().zip(&basis) {
        if !c.is_zero() {
            z = z.add(&v.scale(c));
        }
    }
    let engine = field_from(&space.lift_vector(&y).expect("lift"));
    out.check(engine == z, format!("engine lift matches the brute-force θ-preserving lift ({} unknowns)", basis.len()));
    if n == 1 && k == 1 {
        let mut expected = VField::zero(2);
        expected.0[0] = Poly::var(2, 0);
        expected.0[1] = Poly::var(2, 1).scale(&q(-1));
        out.check(z == expected, "Y = q∂q lifts to q∂q − p∂p".to_string());
    }
    out
}
