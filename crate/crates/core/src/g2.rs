//! The G₂ structure on ℝ⁷ with a constant 3-form and the Euclidean metric: Hodge star,
//! cross product, curl, the splitting of 2-forms and Hamiltonian 1-forms.

use num_traits::{One, Zero};
use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{Blade, Chart};
use crate::linalg::{Echelon, SparseRow};
use crate::multisymplectic::{hamiltonian_field_basis, Conventions, PlecticSystem};
use crate::poly::{int, rat, Polynomial, Rational};
use crate::random;
use crate::{Form, MultiVec};

pub const DIM: usize = 7;

/// `φ₀ = dx¹²³ + dx¹(dx⁴⁵ − dx⁶⁷) + dx²(dx⁴⁶ − dx⁷⁵) + dx³(dx⁴⁷ − dx⁵⁶)`, which induces the
/// Euclidean metric.
pub fn phi0(chart: &Chart) -> Result<Form> {
    standard_form(chart, 1)
}

/// The variant with `−dx³(dx⁴⁷ − dx⁵⁶)`. Its metric has signature (3, 4).
pub fn phi0_printed(chart: &Chart) -> Result<Form> {
    standard_form(chart, -1)
}

fn standard_form(chart: &Chart, third: i64) -> Result<Form> {
    if chart.dim() != DIM {
        return Err(Error::ChartMismatch(chart.dim(), DIM));
    }
    let terms: [(&[usize], i64); 7] = [
        (&[1, 2, 3], 1),
        (&[1, 4, 5], 1),
        (&[1, 6, 7], -1),
        (&[2, 4, 6], 1),
        (&[2, 7, 5], -1),
        (&[3, 4, 7], third),
        (&[3, 5, 6], -third),
    ];
    Ok(signed_sum(&terms))
}

/// `B_{ij}` with `(eᵢ⌟φ)∧(eⱼ⌟φ)∧φ = −6 B_{ij} dx¹…dx⁷`; a multiple of the induced metric.
pub fn induced_bilinear(phi: &Form) -> Vec<Vec<Rational>> {
    let dim = phi.dim();
    let top = Blade::all(dim, dim)[0];
    let contractions: Vec<Form> = (0..dim).map(|i| MultiVec::partial(dim, i).interior(phi)).collect();
    (0..dim)
        .map(|i| {
            (0..dim)
                .map(|j| {
                    let w = contractions[i].wedge(&contractions[j]).wedge(phi);
                    w.comp(top).constant_term() / int(-6)
                })
                .collect()
        })
        .collect()
}

/// `φ = Re(dz¹dz²dz³) − dt∧ω₃` in the chart `t, x¹, x², x³, y¹, y², y³`.
pub fn torus_phi() -> Form {
    // t = 1, x_j = 1 + j, y_j = 4 + j
    let terms: [(&[usize], i64); 7] = [
        (&[2, 3, 4], 1),
        (&[2, 6, 7], -1),
        (&[5, 3, 7], -1),
        (&[5, 6, 4], -1),
        (&[1, 2, 5], -1),
        (&[1, 3, 6], -1),
        (&[1, 4, 7], -1),
    ];
    signed_sum(&terms)
}

/// Sum of `c·dx^{i}∧dx^{j}∧dx^{k}` over one-based index triples.
fn signed_sum(terms: &[(&[usize], i64)]) -> Form {
    let mut phi = Form::zero(DIM, 3);
    for (idx, c) in terms {
        let zero_based: Vec<usize> = idx.iter().map(|i| i - 1).collect();
        phi = &phi + &Form::basis(DIM, &zero_based).scale_int(*c);
    }
    phi
}

pub fn standard_chart() -> Chart {
    Chart::numbered("x", DIM)
}

pub fn torus_chart() -> Chart {
    Chart::new(&["t", "x1", "x2", "x3", "y1", "y2", "y3"]).expect("distinct names")
}

/// The two eigenvalues of `α ↦ *(φ∧α)` on 2-forms, on `Ω²₇` and on `Ω²₁₄`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Eigenvalues {
    pub on7: Rational,
    pub on14: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoFormSplit {
    pub part7: Form,
    pub part14: Form,
}

#[derive(Clone, Debug)]
pub struct G2Data {
    chart: Chart,
    phi: Form,
    psi: Form,
    vol: Form,
    vol_sign: i32,
    eigen: Eigenvalues,
}

impl G2Data {
    pub fn standard() -> Self {
        let chart = standard_chart();
        let phi = phi0(&chart).expect("7-dimensional chart");
        G2Data::new(chart, phi).expect("standard structure")
    }

    pub fn torus() -> Self {
        G2Data::new(torus_chart(), torus_phi()).expect("torus structure")
    }

    /// A constant 3-form whose induced metric is the Euclidean one. The volume form is read off
    /// from `(e₁⌟φ)∧(e₁⌟φ)∧φ = −6 vol` and the identity is then checked on every basis pair.
    pub fn new(chart: Chart, phi: Form) -> Result<Self> {
        if chart.dim() != DIM || phi.dim() != DIM {
            return Err(Error::ChartMismatch(phi.dim(), DIM));
        }
        if phi.degree() != 3 || !phi.has_constant_coeffs() {
            return Err(Error::InvalidInput("expected a constant-coefficient 3-form".into()));
        }
        let e1 = MultiVec::partial(DIM, 0).interior(&phi);
        let vol = e1.wedge(&e1).wedge(&phi).scale(&rat(-1, 6));
        let top = Blade::all(DIM, DIM)[0];
        let vol_sign = match vol.comp(top).constant_term() {
            c if c == Rational::one() => 1,
            c if c == -Rational::one() => -1,
            _ => return Err(Error::Structure("3-form does not induce the Euclidean metric".into())),
        };
        let mut g2 = G2Data {
            chart,
            psi: Form::zero(DIM, 4),
            phi,
            vol,
            vol_sign,
            eigen: Eigenvalues {
                on7: Rational::zero(),
                on14: Rational::zero(),
            },
        };
        if g2.metric_identity().iter().any(|(_, r)| !r.is_zero()) {
            return Err(Error::Structure("3-form does not induce the Euclidean metric".into()));
        }
        g2.psi = g2.hodge_star(&g2.phi);
        g2.eigen = g2.compute_eigenvalues()?;
        Ok(g2)
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn phi(&self) -> &Form {
        &self.phi
    }

    pub fn psi(&self) -> &Form {
        &self.psi
    }

    pub fn vol(&self) -> &Form {
        &self.vol
    }

    pub fn eigenvalues(&self) -> &Eigenvalues {
        &self.eigen
    }

    /// `(eᵢ⌟φ)∧(eⱼ⌟φ)∧φ + 6δᵢⱼ vol` for all `i ≤ j`.
    pub fn metric_identity(&self) -> Vec<((usize, usize), Form)> {
        let contractions: Vec<Form> = (0..DIM).map(|i| MultiVec::partial(DIM, i).interior(&self.phi)).collect();
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in i..DIM {
                let mut r = contractions[i].wedge(&contractions[j]).wedge(&self.phi);
                if i == j {
                    r = &r + &self.vol.scale_int(6);
                }
                out.push(((i, j), r));
            }
        }
        out
    }

    /// `*dx^I = ±ε(I, Iᶜ) dx^{Iᶜ}`, the overall sign being that of the volume form.
    pub fn hodge_star(&self, tau: &Form) -> Form {
        let m = tau.degree();
        let full = (1u32 << DIM) - 1;
        let mut out = Form::zero(DIM, DIM - m);
        for (b, p) in tau.comps() {
            let c = Blade(full & !b.0);
            let (s, _) = b.wedge(c).expect("complementary blades");
            out.add_comp(c, p.scale(&int((s * self.vol_sign).into())));
        }
        out
    }

    /// `X × Y = (Y⌟X⌟φ)♯`.
    pub fn cross(&self, x: &MultiVec, y: &MultiVec) -> MultiVec {
        y.interior(&x.interior(&self.phi)).sharp()
    }

    /// `(X × Y)^l = XⁱY^j φ_{ijl}` with `φ_{ijl} = φ(eᵢ, eⱼ, e_l)`.
    pub fn cross_coordinates(&self, x: &MultiVec, y: &MultiVec) -> MultiVec {
        let mut comps = vec![Polynomial::zero(); DIM];
        for (l, c) in comps.iter_mut().enumerate() {
            for i in 0..DIM {
                for j in 0..DIM {
                    let f = self.phi_component(i, j, l);
                    if !f.is_zero() {
                        *c += &(&x.component(i) * &y.component(j)).scale(&f);
                    }
                }
            }
        }
        MultiVec::vector(&comps)
    }

    /// `φ(eᵢ, eⱼ, e_l)`.
    pub fn phi_component(&self, i: usize, j: usize, l: usize) -> Rational {
        match Blade::from_list(&[i, j, l]) {
            Some((s, b)) => self.phi.comp(b).constant_term() * int(s.into()),
            None => Rational::zero(),
        }
    }

    /// `(curl X)♭ = *(dX♭∧ψ)`.
    pub fn curl(&self, x: &MultiVec) -> MultiVec {
        self.hodge_star(&x.flat().d().wedge(&self.psi)).sharp()
    }

    /// `(curl X)^l = ∂_a X_b φ_{abl}` for the flat connection.
    pub fn curl_coordinates(&self, x: &MultiVec) -> MultiVec {
        let mut comps = vec![Polynomial::zero(); DIM];
        for (l, c) in comps.iter_mut().enumerate() {
            for a in 0..DIM {
                for b in 0..DIM {
                    let f = self.phi_component(a, b, l);
                    if !f.is_zero() {
                        *c += &x.component(b).diff(a).scale(&f);
                    }
                }
            }
        }
        MultiVec::vector(&comps)
    }

    /// `α ↦ *(φ∧α)` on 2-forms.
    pub fn star_phi(&self, alpha: &Form) -> Form {
        self.hodge_star(&self.phi.wedge(alpha))
    }

    /// The eigenvalue on `e₁⌟φ ∈ Ω²₇` and the remaining one from the trace.
    fn compute_eigenvalues(&self) -> Result<Eigenvalues> {
        let v = MultiVec::partial(DIM, 0).interior(&self.phi);
        let image = self.star_phi(&v);
        let (b, p) = v.comps().next().expect("nonzero contraction");
        let on7 = image.comp(b).constant_term() / p.constant_term();
        if image != v.scale(&on7) {
            return Err(Error::Structure("e1⌟φ is not an eigenform".into()));
        }
        let mut trace = Rational::zero();
        for b in Blade::all(DIM, 2) {
            trace += self.star_phi(&Form::from_comps(DIM, 2, [(b, Polynomial::one())])).comp(b).constant_term();
        }
        let on14 = (trace - &on7 * int(7)) / int(14);
        Ok(Eigenvalues { on7, on14 })
    }

    /// Projections `π₇ = (T − b)/(a − b)` and `π₁₄ = (T − a)/(b − a)` for `T = *(φ∧·)`
    /// with eigenvalue `a` on `Ω²₇` and `b` on `Ω²₁₄`.
    pub fn split2(&self, alpha: &Form) -> TwoFormSplit {
        let Eigenvalues { on7: a, on14: b } = &self.eigen;
        let t = self.star_phi(alpha);
        let part7 = (&t - &alpha.scale(b)).scale(&(Rational::one() / (a - b)));
        let part14 = (&t - &alpha.scale(a)).scale(&(Rational::one() / (b - a)));
        TwoFormSplit { part7, part14 }
    }

    /// `π₇ = (α − *(φ∧α))/3`, `π₁₄ = (2α + *(φ∧α))/3` taken literally.
    pub fn split2_printed(&self, alpha: &Form) -> TwoFormSplit {
        let t = self.star_phi(alpha);
        let third = rat(1, 3);
        TwoFormSplit {
            part7: (alpha - &t).scale(&third),
            part14: (&alpha.scale_int(2) + &t).scale(&third),
        }
    }

    /// The vector field `X` with `X⌟φ = β` for `β ∈ Ω²₇`, by elimination on the components.
    pub fn vector_of_seven(&self, beta: &Form) -> Result<MultiVec> {
        let contractions: Vec<Form> = (0..DIM).map(|i| MultiVec::partial(DIM, i).interior(&self.phi)).collect();
        let mut comps = vec![Polynomial::zero(); DIM];
        let mut monos = std::collections::BTreeSet::new();
        for (_, p) in beta.comps() {
            for (m, _) in p.terms() {
                monos.insert(m.clone());
            }
        }
        for m in monos {
            let mut ech = Echelon::new(DIM);
            for b in Blade::all(DIM, 2) {
                let row: SparseRow = contractions
                    .iter()
                    .enumerate()
                    .map(|(i, c)| (i, c.comp(b).constant_term()))
                    .filter(|(_, c)| !c.is_zero())
                    .collect();
                ech.push(row, beta.comp(b).coeff(&m));
            }
            let sol = ech.solve().ok_or(Error::NoSolution("2-form is not in the 7-dimensional part".into()))?;
            for (i, c) in sol.into_iter().enumerate() {
                comps[i].add_term(m.clone(), c);
            }
        }
        Ok(MultiVec::vector(&comps))
    }

    pub fn system(&self, conventions: Conventions) -> Result<PlecticSystem> {
        PlecticSystem::with_conventions(self.chart.clone(), self.phi.clone(), conventions)
    }

    /// Hamiltonian test `π₁₄(dα) = 0` for a 1-form, with the solved Hamiltonian field and the
    /// curl of `α♯` for comparison.
    pub fn hamiltonian_check(&self, alpha: &Form, conventions: Conventions) -> Result<G2Hamiltonian> {
        if alpha.degree() != 1 && !alpha.is_zero() {
            return Err(Error::DegreeMismatch(alpha.degree(), 1));
        }
        let alpha = if alpha.is_zero() { Form::zero(DIM, 1) } else { alpha.clone() };
        let split = self.split2(&alpha.d());
        let is_hamiltonian = split.part14.is_zero();
        let curl = self.curl(&alpha.sharp());
        let seven = self.vector_of_seven(&split.part7)?;
        let field = if is_hamiltonian {
            Some(self.system(conventions)?.hamiltonian_field(&alpha)?)
        } else {
            None
        };
        Ok(G2Hamiltonian {
            is_hamiltonian,
            field,
            curl,
            seven,
        })
    }
}

#[derive(Clone, Debug)]
pub struct G2Hamiltonian {
    pub is_hamiltonian: bool,
    /// The field solved from `X⌟φ = ∓dα` when `α` is Hamiltonian.
    pub field: Option<MultiVec>,
    pub curl: MultiVec,
    /// The vector field `Z` with `Z⌟φ = π₇(dα)`.
    pub seven: MultiVec,
}

/// Residuals relating curl, cross product and bracket for two Hamiltonian 1-forms.
#[derive(Clone, Debug)]
pub struct Coherence {
    /// `π₁₄(d (curl α♯ × curl β♯)♭)`.
    pub cross_part14: Form,
    /// `curl(curl α♯ × curl β♯) + 3[curl α♯, curl β♯]`.
    pub residual: MultiVec,
    /// `curl(curl α♯ × curl β♯) − [curl α♯, curl β♯]`.
    pub unscaled_residual: MultiVec,
    /// `{α,β} − (X_α × X_β)♭` for the solved Hamiltonian fields.
    pub bracket_is_cross: Form,
}

impl G2Data {
    pub fn coherence(&self, alpha: &Form, beta: &Form, conventions: Conventions) -> Result<Coherence> {
        let sys = self.system(conventions)?;
        let (pa, pb) = (sys.pair(alpha)?, sys.pair(beta)?);
        let ca = self.curl(&alpha.sharp());
        let cb = self.curl(&beta.sharp());
        let cross = self.cross(&ca, &cb);
        let lhs = self.curl(&cross);
        let bracket = ca.lie_bracket(&cb);
        let poisson = sys.poisson(&pa, &pb).alpha;
        Ok(Coherence {
            cross_part14: self.split2(&cross.flat().d()).part14,
            residual: &lhs + &bracket.scale_int(3),
            unscaled_residual: &lhs - &bracket,
            bracket_is_cross: &poisson - &self.cross(&pa.field, &pb.field).flat(),
        })
    }
}

/// Random Hamiltonian 1-forms `K(X⌟φ) + df`, where `X` ranges over the polynomial solutions
/// of `d(X⌟φ) = 0` up to a coefficient degree, so that `π₁₄(dα) = 0` by construction.
#[derive(Clone, Debug)]
pub struct HamiltonianOneForms {
    basis: Vec<MultiVec>,
    sys: PlecticSystem,
}

impl HamiltonianOneForms {
    pub fn new(g2: &G2Data, max_degree: u32, conventions: Conventions) -> Result<Self> {
        Ok(HamiltonianOneForms {
            basis: hamiltonian_field_basis(g2.phi(), 1, max_degree, None),
            sys: g2.system(conventions)?,
        })
    }

    /// A form together with its Hamiltonian field.
    pub fn sample(&self, r: &mut random::Rng8) -> (Form, MultiVec) {
        let mut x = MultiVec::zero(DIM, 1);
        for _ in 0..3 {
            let i = r.gen_range(0..self.basis.len());
            x = &x + &self.basis[i].scale(&random::small_rational(r));
        }
        let exact = random::polynomial(r, DIM, random::Shape::default());
        let alpha = &self.sys.hamiltonian_form(&x).expect("sampled field is Hamiltonian") + &Form::scalar(DIM, exact).d();
        (alpha, x)
    }
}

/// The torus action on `ℝ ⊕ ℂ³` and its co-momentum data.
pub mod torus {
    use super::*;
    use crate::comomentum::{verify_weak, ComomentumMap, ComomentumReport};
    use crate::complex::{mul_scalar, CForm, CVec, ComplexCoord, Gaussian};
    use crate::lie::{Action, LieAlgebra, WedgePower};
    use crate::multisymplectic::Sign;

    pub fn coords() -> [ComplexCoord; 3] {
        [0, 1, 2].map(|j| ComplexCoord::new(DIM, 1 + j, 4 + j))
    }

    /// `Re(dz¹∧dz²∧dz³) − dt∧(i/2)Σ dzʲ∧dz̄ʲ`.
    pub fn phi_from_complex() -> CForm {
        let z = coords();
        let mut kahler = CForm::zero(DIM, 2);
        for zj in &z {
            kahler = &kahler + &zj.dz().wedge(&zj.dzbar());
        }
        let kahler = kahler.scale(&Gaussian::new(rat(0, 1), rat(1, 2)));
        let holo = z[0].dz().wedge(&z[1].dz()).wedge(&z[2].dz());
        &holo.re_part() - &CForm::real(Form::dx(DIM, 0)).wedge(&kahler)
    }

    /// `(i/2)(z_a∂_{z_a} − z_b∂_{z_b} − z̄_a∂_{z̄_a} + z̄_b∂_{z̄_b})`.
    pub fn generator_complex(a: usize, b: usize) -> CVec {
        let z = coords();
        let hol = &mul_scalar(&z[a].z(), &z[a].del()) - &mul_scalar(&z[b].z(), &z[b].del());
        let anti = &mul_scalar(&z[a].zbar(), &z[a].del_bar()) - &mul_scalar(&z[b].zbar(), &z[b].del_bar());
        (&hol - &anti).scale(&Gaussian::new(rat(0, 1), rat(1, 2)))
    }

    /// `½(−y_a∂_{x_a} + y_b∂_{x_b} + x_a∂_{y_a} − x_b∂_{y_b})` in the real chart.
    pub fn generator_real(a: usize, b: usize) -> MultiVec {
        let z = coords();
        let half = rat(1, 2);
        let mut v = MultiVec::zero(DIM, 1);
        v.add_comp(Blade::single(z[a].x), -Polynomial::var(z[a].y).scale(&half));
        v.add_comp(Blade::single(z[b].x), Polynomial::var(z[b].y).scale(&half));
        v.add_comp(Blade::single(z[a].y), Polynomial::var(z[a].x).scale(&half));
        v.add_comp(Blade::single(z[b].y), -Polynomial::var(z[b].x).scale(&half));
        v
    }

    pub fn action() -> Action {
        Action::new(LieAlgebra::abelian(2), DIM, vec![generator_real(0, 2), generator_real(1, 2)])
            .expect("commuting generators")
    }

    /// `r·½Im(z_a z_b dz_c) + s·¼(|z_d|² − |z_e|²)dt`.
    pub fn one_form(r: i64, ab: (usize, usize), c: usize, s: i64, de: (usize, usize)) -> Form {
        let z = coords();
        let im = z[ab.0].z().wedge(&z[ab.1].z()).wedge(&z[c].dz()).im.scale(&rat(r, 2));
        let t = (&z[de.0].abs2() - &z[de.1].abs2()).scale(&rat(s, 4));
        &im + &Form::monomial(DIM, &[0], t)
    }

    /// `¼Re(z₁z₂z₃)`.
    pub fn f2() -> Form {
        let z = coords();
        z[0].z().wedge(&z[1].z()).wedge(&z[2].z()).re.scale(&rat(1, 4))
    }

    pub fn re_z1z2z3() -> Form {
        f2().scale_int(4)
    }

    #[derive(Clone, Debug)]
    pub struct GeneratorCheck {
        /// `V⌟φ − d f` for the displayed one-form.
        pub printed_residual: Form,
        pub printed_hamiltonian: bool,
        pub printed_curl_is_generator: bool,
        /// The one-form `f` with `V⌟φ = d f`.
        pub corrected: Form,
        pub corrected_residual: Form,
        pub corrected_hamiltonian: bool,
        /// `curl(f♯) − 3V` for the corrected form.
        pub corrected_curl_residual: MultiVec,
    }

    #[derive(Clone, Debug)]
    pub struct TorusReport {
        pub phi_matches_complex: bool,
        pub generators_match_complex: bool,
        pub a: GeneratorCheck,
        pub b: GeneratorCheck,
        /// `B⌟A⌟φ + d(¼Re(z₁z₂z₃))`.
        pub f2_residual: Form,
        /// `4(A×B)♭ + d(Re(z₁z₂z₃))`.
        pub cross_residual: Form,
        /// `A×B + (d f₂)♯`, the vector form of the second co-momentum equation.
        pub moment_map_2: MultiVec,
        /// Weak verification of the formal-convention map `f₁ = −corrected`, `f₂ = ¼Re(z₁z₂z₃)`.
        pub weak: ComomentumReport,
    }

    impl TorusReport {
        pub fn passes(&self) -> bool {
            self.phi_matches_complex
                && self.generators_match_complex
                && self.a.corrected_residual.is_zero()
                && self.b.corrected_residual.is_zero()
                && self.a.corrected_hamiltonian
                && self.b.corrected_hamiltonian
                && self.a.corrected_curl_residual.is_zero()
                && self.b.corrected_curl_residual.is_zero()
                && self.f2_residual.is_zero()
                && self.cross_residual.is_zero()
                && self.moment_map_2.is_zero()
                && self.weak.is_zero()
        }
    }

    fn check(g2: &G2Data, v: &MultiVec, printed: Form, corrected: Form) -> Result<GeneratorCheck> {
        let vphi = v.interior(g2.phi());
        let conv = Conventions::default();
        let p = g2.hamiltonian_check(&printed, conv)?;
        let c = g2.hamiltonian_check(&corrected, conv)?;
        Ok(GeneratorCheck {
            printed_residual: &vphi - &printed.d(),
            printed_hamiltonian: p.is_hamiltonian,
            printed_curl_is_generator: p.curl == *v,
            corrected_residual: &vphi - &corrected.d(),
            corrected_hamiltonian: c.is_hamiltonian,
            corrected_curl_residual: &c.curl - &v.scale_int(3),
            corrected,
        })
    }

    pub fn example() -> Result<TorusReport> {
        let g2 = G2Data::torus();
        let a = generator_real(0, 2);
        let b = generator_real(1, 2);
        let (ac, bc) = (generator_complex(0, 2), generator_complex(1, 2));
        let generators_match_complex = ac.im.is_zero() && bc.im.is_zero() && ac.re == a && bc.re == b;
        let phic = phi_from_complex();
        let phi_matches_complex = phic.im.is_zero() && phic.re == *g2.phi();

        let a_check = check(&g2, &a, one_form(1, (0, 2), 1, -1, (0, 2)), one_form(1, (0, 2), 1, 1, (0, 2)))?;
        let b_check = check(&g2, &b, one_form(1, (0, 1), 2, -1, (0, 1)), one_form(-1, (1, 2), 0, 1, (1, 2)))?;

        let f2 = f2();
        let ba = b.interior(&a.interior(g2.phi()));
        let cross = g2.cross(&a, &b);
        let sys = g2.system(Conventions {
            hamiltonian: Sign::Minus,
            comomentum: Sign::Minus,
        })?;
        let mut map = ComomentumMap::new(action(), 2, true);
        map.set(WedgePower::basis(2, &[0]), -a_check.corrected.clone())?;
        map.set(WedgePower::basis(2, &[1]), -b_check.corrected.clone())?;
        map.set(WedgePower::basis(2, &[0, 1]), f2.clone())?;
        Ok(TorusReport {
            phi_matches_complex,
            generators_match_complex,
            f2_residual: &ba + &f2.d(),
            cross_residual: &cross.flat().scale_int(4) + &re_z1z2z3().d(),
            moment_map_2: &cross + &f2.d().sharp(),
            weak: verify_weak(&map, &sys)?,
            a: a_check,
            b: b_check,
        })
    }
}
