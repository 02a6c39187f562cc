//! Worked examples frozen as fixtures: systems, actions, displayed co-momentum values, the
//! convention each displayed value satisfies, and the formal-convention values.

use crate::comomentum::{build_exact, closure_defect, kernel_pairs, verify, verify_weak, ClosureDefect, ComomentumMap, ComomentumReport};
use crate::complex::{mul_scalar, CForm, CVec, ComplexCoord, Gaussian};
use crate::error::Result;
use crate::exterior::{Blade, Chart};
use crate::g2::{self, G2Data};
use crate::lie::{Action, LieAlgebra, WedgePower};
use crate::multisymplectic::{zeta, Conventions, PlecticSystem, Sign};
use crate::phase_space::PhaseSpace;
use crate::poly::{rat, Polynomial, Rational};
use crate::random;
use crate::{Form, MultiVec};

/// One value `f_k(p)` of a worked example.
#[derive(Clone, Debug)]
pub struct ComponentValue {
    pub label: String,
    pub p: WedgePower,
    /// The value exactly as displayed, when one is displayed.
    pub displayed: Option<Form>,
    /// The displayed value with index typos repaired.
    pub reading: Option<Form>,
    /// The co-momentum convention `reading` satisfies, `None` when it satisfies neither.
    pub convention: Option<Sign>,
    /// The value under the formal convention `df_k(p) = −ζ(k)V_p⌟ω − f_{k−1}(∂p)`.
    pub formal: Form,
}

#[derive(Clone, Debug)]
pub struct ComomentumFixture {
    pub name: &'static str,
    pub chart: Chart,
    pub omega: Form,
    pub hamiltonian: Option<Form>,
    pub action: Action,
    pub weak: bool,
    pub components: Vec<ComponentValue>,
}

/// Residual of one displayed value under its recorded convention.
#[derive(Clone, Debug)]
pub struct DisplayedCheck {
    pub label: String,
    pub convention: Option<Sign>,
    /// `d(reading) − c·ζ(k)V_p⌟ω` for `c` the recorded convention.
    pub residual: Option<Form>,
    /// Whether the literal display differs from the repaired reading.
    pub repaired: bool,
    pub plus_ok: bool,
    pub minus_ok: bool,
}

impl ComomentumFixture {
    pub fn n(&self) -> usize {
        self.omega.degree() - 1
    }

    pub fn system(&self, conventions: Conventions) -> Result<PlecticSystem> {
        let sys = PlecticSystem::with_conventions(self.chart.clone(), self.omega.clone(), conventions)?;
        match &self.hamiltonian {
            Some(h) => sys.with_hamiltonian(h.clone()),
            None => Ok(sys),
        }
    }

    /// The formal values, negated under the `plus` co-momentum convention.
    pub fn map(&self, conventions: Conventions) -> Result<ComomentumMap> {
        let mut map = ComomentumMap::new(self.action.clone(), self.n(), self.weak);
        let s = -conventions.comomentum.value();
        for c in &self.components {
            map.set(c.p.clone(), c.formal.clone().with_sign(s))?;
        }
        Ok(map)
    }

    pub fn verify(&self, conventions: Conventions) -> Result<ComomentumReport> {
        let sys = self.system(conventions)?;
        let map = self.map(conventions)?;
        if self.weak {
            verify_weak(&map, &sys)
        } else {
            verify(&map, &sys)
        }
    }

    /// Each displayed value against `df = c·ζ(k)V_p⌟ω` for both signs `c`. Only meaningful
    /// for values with `∂p = 0`, which holds for every displayed value here.
    pub fn displayed_checks(&self) -> Vec<DisplayedCheck> {
        let omega = &self.omega;
        self.components
            .iter()
            .map(|c| {
                let k = c.p.degree();
                let vp = self.action.generator(&c.p).interior(omega).with_sign(zeta(k).expect("k >= 1"));
                let residual_for = |s: Sign| c.reading.as_ref().map(|f| &f.d() - &vp.clone().with_sign(s.value()));
                let plus_ok = residual_for(Sign::Plus).is_some_and(|r| r.is_zero());
                let minus_ok = residual_for(Sign::Minus).is_some_and(|r| r.is_zero());
                DisplayedCheck {
                    label: c.label.clone(),
                    convention: c.convention,
                    residual: c.convention.and_then(residual_for),
                    repaired: c.displayed != c.reading,
                    plus_ok,
                    minus_ok,
                }
            })
            .collect()
    }

    /// Closure defects on all kernel basis pairs.
    pub fn closure_defects(&self, conventions: Conventions) -> Result<Vec<(WedgePower, WedgePower, ClosureDefect)>> {
        let sys = self.system(conventions)?;
        let map = self.map(conventions)?;
        let mut out = Vec::new();
        for (p, q) in kernel_pairs(&map) {
            let d = closure_defect(&map, &sys, &p, &q)?;
            out.push((p, q, d));
        }
        Ok(out)
    }
}

/// A displayed Hamiltonian pair and the sign it satisfies in `dα = s·X⌟ω`.
#[derive(Clone, Debug)]
pub struct PairFixture {
    pub label: &'static str,
    pub chart: Chart,
    pub omega: Form,
    pub form: Form,
    pub displayed_field: MultiVec,
    pub convention: Sign,
    /// The field solved under the formal convention `dα = −X⌟ω`.
    pub formal_field: MultiVec,
}

impl PairFixture {
    pub fn residual(&self, s: Sign) -> Form {
        &self.form.d() - &self.displayed_field.interior(&self.omega).with_sign(s.value())
    }
}

fn poly_term(c: &Rational, vars: &[usize]) -> Polynomial {
    let mut p = Polynomial::constant(c.clone());
    for &v in vars {
        p = &p * &Polynomial::var(v);
    }
    p
}

/// `c·x_{vars}·dx_{indices}`.
fn term(dim: usize, indices: &[usize], c: &Rational, vars: &[usize]) -> Form {
    Form::monomial(dim, indices, poly_term(c, vars))
}

fn sum(forms: impl IntoIterator<Item = Form>) -> Form {
    forms.into_iter().reduce(|a, b| &a + &b).expect("nonempty sum")
}

fn component(label: &str, p: WedgePower, displayed: Option<Form>, reading: Option<Form>, convention: Option<Sign>, formal: Form) -> ComponentValue {
    ComponentValue {
        label: label.to_string(),
        p,
        displayed,
        reading,
        convention,
        formal,
    }
}

/// A displayed value without typos, with the convention it satisfies.
fn shown(label: &str, p: WedgePower, value: Form, convention: Sign) -> ComponentValue {
    let formal = match convention {
        Sign::Minus => value.clone(),
        Sign::Plus => -value.clone(),
    };
    component(label, p, Some(value.clone()), Some(value), Some(convention), formal)
}

const Q: [usize; 3] = [0, 1, 2];
const P: [usize; 3] = [3, 4, 5];

pub fn translation_chart() -> Chart {
    Chart::new(&["q1", "q2", "q3", "p1", "p2", "p3"]).expect("chart")
}

/// The Hamiltonian of the free particle with the index typo repaired.
pub fn translation_hamiltonian() -> Form {
    translation_hamiltonian_with(Q[0])
}

/// The Hamiltonian as displayed, with `p₂q³dq²` in the second group.
pub fn translation_hamiltonian_displayed() -> Form {
    translation_hamiltonian_with(Q[1])
}

fn translation_hamiltonian_with(slot: usize) -> Form {
    let h = rat(1, 2);
    let dp = Form::basis(6, &P);
    let one = sum([
        term(6, &[Q[2]], &h, &[P[0], Q[1]]),
        term(6, &[Q[1]], &-h.clone(), &[P[0], Q[2]]),
        term(6, &[Q[2]], &-h.clone(), &[P[1], Q[0]]),
        term(6, &[slot], &h, &[P[1], Q[2]]),
        term(6, &[Q[1]], &h, &[P[2], Q[0]]),
        term(6, &[Q[0]], &-h.clone(), &[P[2], Q[1]]),
    ]);
    one.wedge(&dp)
}

/// The geodesic spray `Σ pᵢ∂_{qⁱ}`.
pub fn geodesic_spray() -> MultiVec {
    let mut s = MultiVec::zero(6, 1);
    for i in 0..3 {
        s.add_comp(Blade::single(Q[i]), Polynomial::var(P[i]));
    }
    s
}

/// Translations of `ℝ³` pulled back to `T*ℝ³ = ℝ⁶` with the volume form.
pub fn translation() -> ComomentumFixture {
    let dim = 6;
    let h = rat(1, 2);
    let dp = Form::basis(dim, &P);
    let half_rot = |a: usize, b: usize| {
        // ½(q^a dq^b − q^b dq^a)∧dp₁₂₃
        (&term(dim, &[b], &h, &[a]) - &term(dim, &[a], &h, &[b])).wedge(&dp)
    };
    let e = |idx: &[usize]| WedgePower::basis(3, idx);
    let f13_displayed = (&term(dim, &[Q[1]], &h, &[Q[0]]) - &term(dim, &[Q[1]], &h, &[Q[1]])).wedge(&dp);
    let f13_reading = half_rot(Q[0], Q[1]);
    let third = rat(1, 3);
    let f3 = sum([
        term(dim, &[P[1], P[2]], &third, &[P[0]]),
        term(dim, &[P[2], P[0]], &third, &[P[1]]),
        term(dim, &[P[0], P[1]], &third, &[P[2]]),
    ]);
    let components = vec![
        shown("f1(e1)", e(&[0]), half_rot(Q[1], Q[2]), Sign::Plus),
        shown("f1(e2)", e(&[1]), half_rot(Q[0], Q[2]), Sign::Minus),
        component("f1(e3)", e(&[2]), Some(f13_displayed), Some(f13_reading.clone()), Some(Sign::Plus), -f13_reading),
        shown("f2(e1^e2)", e(&[0, 1]), term(dim, &P, &int1(), &[Q[2]]), Sign::Plus),
        shown("f2(e1^e3)", e(&[0, 2]), term(dim, &P, &int1(), &[Q[1]]), Sign::Minus),
        shown("f2(e2^e3)", e(&[1, 2]), term(dim, &P, &int1(), &[Q[0]]), Sign::Plus),
        shown("f3(e1^e2^e3)", e(&[0, 1, 2]), f3, Sign::Minus),
    ];
    ComomentumFixture {
        name: "translation",
        chart: translation_chart(),
        omega: Form::basis(dim, &[0, 1, 2, 3, 4, 5]),
        hamiltonian: Some(translation_hamiltonian()),
        action: random::translation_action(dim, &Q),
        weak: false,
        components,
    }
}

fn int1() -> Rational {
    rat(1, 1)
}

pub fn complex_chart() -> Chart {
    Chart::new(&["x1", "x2", "x3", "y1", "y2", "y3"]).expect("chart")
}

/// `z_j = x_j + i y_j` on the real chart of `ℂ³`.
pub fn complex_coords() -> [ComplexCoord; 3] {
    [0, 1, 2].map(|j| ComplexCoord::new(6, j, 3 + j))
}

/// `(i/2)(z_a∂_{z_a} − z_b∂_{z_b} − z̄_a∂_{z̄_a} + z̄_b∂_{z̄_b})` on `ℂ³`.
pub fn torus_generator_complex(a: usize, b: usize) -> CVec {
    let z = complex_coords();
    let hol = &mul_scalar(&z[a].z(), &z[a].del()) - &mul_scalar(&z[b].z(), &z[b].del());
    let anti = &mul_scalar(&z[a].zbar(), &z[a].del_bar()) - &mul_scalar(&z[b].zbar(), &z[b].del_bar());
    (&hol - &anti).scale(&Gaussian::new(rat(0, 1), rat(1, 2)))
}

/// The diagonal `T²` action on `ℂ³` with generators `A` and `B`.
pub fn torus_action() -> Action {
    let gens = [(0, 2), (1, 2)].map(|(a, b)| torus_generator_complex(a, b).re).to_vec();
    Action::new(LieAlgebra::abelian(2), 6, gens).expect("commuting generators")
}

/// `c·Im(z_a z_b dz_c)`.
fn im_form(c: &Rational, a: usize, b: usize, dz: usize) -> Form {
    let z = complex_coords();
    z[a].z().wedge(&z[b].z()).wedge(&z[dz].dz()).im.scale(c)
}

/// `c·(|z_a|² − |z_b|²)`.
fn abs_diff(c: &Rational, a: usize, b: usize) -> Form {
    let z = complex_coords();
    Form::scalar(6, (&z[a].abs2() - &z[b].abs2()).scale(c))
}

/// `Re(dz¹∧dz²∧dz³)`.
pub fn re_holomorphic_volume() -> Form {
    let z = complex_coords();
    z[0].dz().wedge(&z[1].dz()).wedge(&z[2].dz()).re
}

/// `(i/2)Σ dzʲ∧dz̄ʲ`.
pub fn kahler_form() -> Form {
    let mut w = CForm::zero(6, 2);
    for z in complex_coords() {
        w = &w + &z.dz().wedge(&z.dzbar());
    }
    w.scale(&Gaussian::new(rat(0, 1), rat(1, 2))).re
}

/// `¼Re(z₁z₂z₃)` on `ℂ³`.
pub fn quarter_re_z1z2z3() -> Form {
    let z = complex_coords();
    z[0].z().wedge(&z[1].z()).wedge(&z[2].z()).re.scale(&rat(1, 4))
}

/// `ℂ³` with `Re(Ω)` and the diagonal torus.
pub fn complex_volume() -> ComomentumFixture {
    let h = rat(1, 2);
    let a = WedgePower::basis(2, &[0]);
    let b = WedgePower::basis(2, &[1]);
    let b_reading = im_form(&h, 1, 2, 0);
    let components = vec![
        shown("f1(A)", a, im_form(&h, 0, 2, 1), Sign::Plus),
        component("f1(B)", b, Some(im_form(&h, 0, 2, 0)), Some(b_reading.clone()), Some(Sign::Minus), b_reading),
        shown("f2(A^B)", WedgePower::basis(2, &[0, 1]), quarter_re_z1z2z3(), Sign::Minus),
    ];
    ComomentumFixture {
        name: "complex-volume",
        chart: complex_chart(),
        omega: re_holomorphic_volume(),
        hamiltonian: None,
        action: torus_action(),
        weak: true,
        components,
    }
}

/// `ℂ³` with the Kähler form and the diagonal torus.
pub fn complex_kahler() -> ComomentumFixture {
    let q = rat(-1, 4);
    let components = vec![
        shown("f1(A)", WedgePower::basis(2, &[0]), abs_diff(&q, 0, 2), Sign::Plus),
        shown("f1(B)", WedgePower::basis(2, &[1]), abs_diff(&q, 1, 2), Sign::Plus),
    ];
    ComomentumFixture {
        name: "complex-kahler",
        chart: complex_chart(),
        omega: kahler_form(),
        hamiltonian: None,
        action: torus_action(),
        weak: true,
        components,
    }
}

/// The sign `s` in `4(A×B)♭ = s·d(Re(z₁z₂z₃))` for the torus generators on `ℝ⁷`.
pub const TORUS_CROSS_SIGN: i32 = -1;

/// The torus action on `ℝ⁷ = ℝ ⊕ ℂ³` with its G₂ form.
pub fn g2_torus() -> ComomentumFixture {
    let g2 = G2Data::torus();
    let a = g2::torus::one_form(1, (0, 2), 1, 1, (0, 2));
    let b = g2::torus::one_form(-1, (1, 2), 0, 1, (1, 2));
    let a_disp = g2::torus::one_form(1, (0, 2), 1, -1, (0, 2));
    let b_disp = g2::torus::one_form(1, (0, 1), 2, -1, (0, 1));
    let components = vec![
        component("f1(A)", WedgePower::basis(2, &[0]), Some(a_disp.clone()), Some(a_disp), None, -a),
        component("f1(B)", WedgePower::basis(2, &[1]), Some(b_disp.clone()), Some(b_disp), None, -b),
        shown("f2(A^B)", WedgePower::basis(2, &[0, 1]), g2::torus::f2(), Sign::Minus),
    ];
    ComomentumFixture {
        name: "g2-torus",
        chart: g2.chart().clone(),
        omega: g2.phi().clone(),
        hamiltonian: None,
        action: g2::torus::action(),
        weak: true,
        components,
    }
}

fn base_chart() -> Chart {
    Chart::new(&["q1", "q2", "q3"]).expect("chart")
}

fn phase_space_fixture(name: &'static str, k: usize, base_action: Action, displayed: impl Fn(&WedgePower) -> Option<(Form, Sign)>) -> ComomentumFixture {
    let space = PhaseSpace::build(base_chart(), k).expect("phase space");
    let action = space.lift_action(&base_action).expect("lift");
    let sys = space.system(Conventions::default()).expect("system");
    let map = build_exact(&sys, space.theta(), &action).expect("lifted actions preserve theta");
    let mut components = Vec::new();
    for l in 1..=map.n() {
        for (p, f) in map.components(l) {
            let label = format!("f{}({})", l, p);
            let (disp, conv) = match displayed(p) {
                Some((d, s)) => (Some(d), Some(s)),
                None => (None, None),
            };
            components.push(component(&label, p.clone(), disp.clone(), disp, conv, f.clone()));
        }
    }
    ComomentumFixture {
        name,
        chart: space.total_chart().clone(),
        omega: space.omega().clone(),
        hamiltonian: None,
        action,
        weak: true,
        components,
    }
}

/// Lifted translations on `Λ¹(T*ℝ³)`; the displayed values are the classical momenta `pᵢ`.
pub fn cotangent_translations() -> ComomentumFixture {
    phase_space_fixture("phase-space-translations", 1, random::translation_action(3, &Q), |p| {
        let i = p.terms().next().map(|(b, _)| b.indices()[0])?;
        (p.degree() == 1).then(|| (Form::scalar(6, Polynomial::var(3 + i)), Sign::Plus))
    })
}

/// Lifted rotations on `Λ²(T*ℝ³)`.
pub fn bivector_rotations() -> ComomentumFixture {
    phase_space_fixture("phase-space-rotations", 2, random::rotation_action(3), |_| None)
}

/// All co-momentum fixtures.
pub fn comomentum_fixtures() -> Vec<ComomentumFixture> {
    vec![
        translation(),
        complex_volume(),
        complex_kahler(),
        cotangent_translations(),
        bivector_rotations(),
        g2_torus(),
    ]
}

/// Displayed Hamiltonian pairs whose sign is recorded.
pub fn pair_fixtures() -> Vec<PairFixture> {
    let r3 = Chart::new(&["x", "y", "z"]).expect("chart");
    let vol3 = Form::basis(3, &[0, 1, 2]);
    let h = rat(1, 2);
    vec![
        PairFixture {
            label: "r3: H = -x dy",
            chart: r3.clone(),
            omega: vol3.clone(),
            form: term(3, &[1], &rat(-1, 1), &[0]),
            displayed_field: MultiVec::partial(3, 2),
            convention: Sign::Minus,
            formal_field: MultiVec::partial(3, 2),
        },
        PairFixture {
            label: "r3: alpha = z dx",
            chart: r3.clone(),
            omega: vol3.clone(),
            form: term(3, &[0], &int1(), &[2]),
            displayed_field: MultiVec::partial(3, 1),
            convention: Sign::Plus,
            formal_field: -MultiVec::partial(3, 1),
        },
        PairFixture {
            label: "r3: hamiltonian form of d/dz",
            chart: r3,
            omega: vol3,
            form: &term(3, &[1], &h, &[0]) - &term(3, &[0], &h, &[1]),
            displayed_field: MultiVec::partial(3, 2),
            convention: Sign::Plus,
            formal_field: -MultiVec::partial(3, 2),
        },
        PairFixture {
            label: "translation: geodesic spray",
            chart: translation_chart(),
            omega: Form::basis(6, &[0, 1, 2, 3, 4, 5]),
            form: translation_hamiltonian(),
            displayed_field: geodesic_spray(),
            convention: Sign::Plus,
            formal_field: -geodesic_spray(),
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::comomentum::{classify_preservation, momentum_conservation_report};
    use crate::multisymplectic::Level;

    fn both() -> [Conventions; 4] {
        [Sign::Minus, Sign::Plus].map(|h| [Sign::Minus, Sign::Plus].map(|c| Conventions { hamiltonian: h, comomentum: c })).concat().try_into().unwrap()
    }

    #[test]
    fn displayed_values_satisfy_their_recorded_convention() {
        for fx in comomentum_fixtures() {
            for c in fx.displayed_checks() {
                match c.convention {
                    Some(Sign::Plus) => assert!(c.plus_ok && !c.minus_ok, "{} {}", fx.name, c.label),
                    Some(Sign::Minus) => assert!(c.minus_ok && !c.plus_ok, "{} {}", fx.name, c.label),
                    None => assert!(!c.plus_ok && !c.minus_ok, "{} {}", fx.name, c.label),
                }
                if let Some(r) = &c.residual {
                    assert!(r.is_zero());
                }
            }
        }
    }

    #[test]
    fn formal_maps_verify_under_every_convention() {
        for fx in comomentum_fixtures() {
            for conv in both() {
                let rep = fx.verify(conv).unwrap();
                assert!(rep.is_zero(), "{} {conv}: {:?}", fx.name, rep.first_nonzero());
                assert!(!rep.entries.is_empty());
            }
        }
    }

    #[test]
    fn closure_defects_are_closed_on_kernel_pairs() {
        for fx in comomentum_fixtures() {
            for conv in both() {
                for (p, q, d) in fx.closure_defects(conv).unwrap() {
                    assert!(d.closed, "{} {p} {q}", fx.name);
                    assert!(d.field_residual.is_zero(), "{} {p} {q}", fx.name);
                }
            }
        }
    }

    #[test]
    fn translation_typos() {
        let fx = translation();
        let repaired: Vec<_> = fx.displayed_checks().into_iter().filter(|c| c.repaired).map(|c| c.label).collect();
        assert_eq!(repaired, vec!["f1(e3)"]);
        let spray = geodesic_spray();
        let vol = Form::basis(6, &[0, 1, 2, 3, 4, 5]);
        assert_eq!(translation_hamiltonian().d(), spray.interior(&vol));
        assert_ne!(translation_hamiltonian_displayed().d(), spray.interior(&vol));
    }

    #[test]
    fn translation_preservation_and_conservation() {
        let fx = translation();
        let sys = fx.system(Conventions::default()).unwrap();
        assert_eq!(classify_preservation(&fx.action, &sys).unwrap().level, Level::Global);
        let rep = momentum_conservation_report(&fx.map(Conventions::default()).unwrap(), &sys).unwrap();
        assert!(rep.transfer_ok());
        assert_eq!(rep.entries.len(), 7);
        assert!(rep.entries.iter().all(|e| e.conserved.level >= Level::Global && e.symmetry.level >= Level::Global));
    }

    #[test]
    fn pair_signs() {
        for fx in pair_fixtures() {
            assert!(fx.residual(fx.convention).is_zero(), "{}", fx.label);
            let other = if fx.convention == Sign::Plus { Sign::Minus } else { Sign::Plus };
            assert!(!fx.residual(other).is_zero(), "{}", fx.label);
            let sys = PlecticSystem::new(fx.chart.clone(), fx.omega.clone()).unwrap();
            assert_eq!(sys.hamiltonian_field(&fx.form).unwrap(), fx.formal_field, "{}", fx.label);
        }
    }

    #[test]
    fn complex_generators_are_real() {
        for (a, b) in [(0, 2), (1, 2)] {
            assert!(torus_generator_complex(a, b).im.is_zero());
        }
        assert!(kahler_form().is_closed());
        assert_eq!(kahler_form(), sum([0, 1, 2].map(|j| Form::basis(6, &[j, 3 + j]))));
    }

    #[test]
    fn phase_space_fixture_shapes() {
        let t = cotangent_translations();
        assert_eq!(t.components.len(), 3);
        for c in &t.components {
            assert_eq!(c.formal, -c.displayed.clone().unwrap());
        }
        let r = bivector_rotations();
        assert_eq!(r.n(), 2);
        let degrees: Vec<usize> = r.components.iter().map(|c| c.p.degree()).collect();
        assert_eq!(degrees, vec![1, 1, 1]);
    }
}
