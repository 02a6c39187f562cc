//! The multisymplectic phase space `Λᵏ(T*N)` over a coordinate chart on `N`, complete lifts,
//! momentum and position forms, and their bracket relations.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::exterior::{sign, Blade, Chart, Graded, Kind};
use crate::lie::{Action, FieldWedge};
use crate::multisymplectic::{zeta, Conventions, PlecticSystem};
use crate::poly::{int, Polynomial};
use crate::random::{self, Rng8, Shape};
use crate::{Form, MultiVec};

#[derive(Clone, Debug)]
pub struct PhaseSpace {
    base: Chart,
    k: usize,
    total: Chart,
    momenta: Vec<Blade>,
    theta: Form,
    omega: Form,
}

impl PhaseSpace {
    /// Coordinates `q¹..qⁿ` followed by one momentum `p_I` per increasing multi-index `I` of length `k`.
    pub fn build(base: Chart, k: usize) -> Result<Self> {
        let n = base.dim();
        if k == 0 || k > n {
            return Err(Error::InvalidInput(format!("form degree {} must lie in 1..={}", k, n)));
        }
        let momenta = Blade::all(n, k);
        let mut names: Vec<String> = base.names().to_vec();
        let sep = if n >= 10 { "_" } else { "" };
        for b in &momenta {
            let idx: Vec<String> = b.indices().iter().map(|i| (i + 1).to_string()).collect();
            names.push(format!("p{}", idx.join(sep)));
        }
        let total = Chart::new(&names)?;
        let dim = total.dim();
        let mut theta = Form::zero(dim, k);
        for (a, b) in momenta.iter().enumerate() {
            theta.add_comp(*b, Polynomial::var(n + a));
        }
        let omega = -theta.d();
        Ok(PhaseSpace {
            base,
            k,
            total,
            momenta,
            theta,
            omega,
        })
    }

    pub fn base_chart(&self) -> &Chart {
        &self.base
    }

    pub fn total_chart(&self) -> &Chart {
        &self.total
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base_dim(&self) -> usize {
        self.base.dim()
    }

    pub fn dim(&self) -> usize {
        self.total.dim()
    }

    pub fn theta(&self) -> &Form {
        &self.theta
    }

    pub fn omega(&self) -> &Form {
        &self.omega
    }

    /// Chart index of the momentum coordinate `p_I`.
    pub fn momentum_index(&self, b: Blade) -> Option<usize> {
        self.momenta.iter().position(|&m| m == b).map(|a| self.base_dim() + a)
    }

    /// `p_J` for an arbitrary index list, with the reordering sign; `None` on repeated indices.
    fn momentum(&self, list: &[usize]) -> Option<Polynomial> {
        let (s, b) = Blade::from_list(list)?;
        let idx = self.momentum_index(b)?;
        Some(Polynomial::var(idx).scale(&int(s.into())))
    }

    pub fn system(&self, conventions: Conventions) -> Result<PlecticSystem> {
        PlecticSystem::with_conventions(self.total.clone(), self.omega.clone(), conventions)
    }

    fn check_base<K: Kind>(&self, x: &Graded<K>) -> Result<()> {
        if x.dim() != self.base_dim() {
            return Err(Error::ChartMismatch(x.dim(), self.base_dim()));
        }
        Ok(())
    }

    /// The same components viewed on the total chart.
    pub fn embed<K: Kind>(&self, x: &Graded<K>) -> Graded<K> {
        Graded::from_comps(self.dim(), x.degree(), x.comps().map(|(b, p)| (b, p.clone())))
    }

    /// `q̇ⁱ = Yⁱ`, `ṗ_{i₁..i_k} = −Σ_a p_{i₁..j..i_k} ∂Yʲ/∂q^{i_a}` with `j` in slot `a`.
    pub fn lift_vector(&self, y: &MultiVec) -> Result<MultiVec> {
        self.check_base(y)?;
        if y.degree() != 1 {
            return Err(Error::DegreeMismatch(y.degree(), 1));
        }
        let n = self.base_dim();
        let mut out = self.embed(y);
        for (a, b) in self.momenta.iter().enumerate() {
            let idx = b.indices();
            let mut pdot = Polynomial::zero();
            for slot in 0..idx.len() {
                for j in 0..n {
                    let dyj = y.component(j).diff(idx[slot]);
                    if dyj.is_zero() {
                        continue;
                    }
                    let mut list = idx.clone();
                    list[slot] = j;
                    if let Some(p) = self.momentum(&list) {
                        pdot -= &(&p * &dyj);
                    }
                }
            }
            out.add_comp(Blade::single(n + a), pdot);
        }
        Ok(out)
    }

    /// Lift of a combination of wedges, factor by factor.
    pub fn complete_lift(&self, y: &FieldWedge) -> Result<MultiVec> {
        let mut terms = Vec::with_capacity(y.terms.len());
        for (c, fields) in &y.terms {
            let lifted = fields.iter().map(|f| self.lift_vector(f)).collect::<Result<Vec<_>>>()?;
            terms.push((c.clone(), lifted));
        }
        let lifted = FieldWedge { terms };
        Ok(lifted.to_multivec(self.dim()))
    }

    /// The action on the total chart generated by the complete lifts.
    pub fn lift_action(&self, action: &Action) -> Result<Action> {
        if action.dim() != self.base_dim() {
            return Err(Error::ChartMismatch(action.dim(), self.base_dim()));
        }
        let gens = action.generators().iter().map(|g| self.lift_vector(g)).collect::<Result<Vec<_>>>()?;
        Action::new(action.algebra().clone(), self.dim(), gens)
    }

    fn momentum_sign(&self, l: usize) -> Result<i32> {
        if l > self.k {
            return Err(Error::DegreeTooHigh {
                op: "momentum_form",
                k: l,
                m: self.k,
            });
        }
        Ok(-zeta(l + 1)?)
    }

    /// `P(Y) = −ζ(l+1) Y♯⌟θ`.
    pub fn momentum_form(&self, y: &FieldWedge) -> Result<Form> {
        let l = y.degree().unwrap_or(0);
        let s = self.momentum_sign(l)?;
        let lifted = self.complete_lift(y)?;
        let out = lifted.interior(&self.theta).with_sign(s);
        Ok(if out.is_zero() { Form::zero(self.dim(), self.k - l) } else { out })
    }

    /// `P(Y)(μ)(Z…) = −ζ(l+1) μ(Y, π_*Z…)`, evaluated at the point `μ = Σ p_I dq^I` in coordinates.
    pub fn momentum_form_pointwise(&self, y: &MultiVec) -> Result<Form> {
        self.check_base(y)?;
        let l = y.degree();
        let s = self.momentum_sign(l)?;
        let mut out = Form::zero(self.dim(), self.k - l);
        for (a, coeff) in y.comps() {
            for (m, i) in self.momenta.iter().enumerate() {
                if let Some((e, rest)) = Blade::interior(a, *i) {
                    let p = Polynomial::var(self.base_dim() + m);
                    out.add_comp(rest, (&p * coeff).scale(&int((e * s).into())));
                }
            }
        }
        Ok(out)
    }

    /// `π*α`: the same coordinate expression on the total chart.
    pub fn position_form(&self, alpha: &Form) -> Result<Form> {
        self.check_base(alpha)?;
        if alpha.degree() > self.k {
            return Err(Error::DegreeTooHigh {
                op: "position_form",
                k: alpha.degree(),
                m: self.k,
            });
        }
        Ok(self.embed(alpha))
    }

    /// The field the momentum form is paired with: `ζ(l)Y♯` for the formal convention.
    pub fn momentum_field(&self, y: &FieldWedge, conventions: Conventions) -> Result<MultiVec> {
        let l = y.degree().unwrap_or(0);
        let s = -conventions.hamiltonian.value() * zeta(l)?;
        Ok(self.complete_lift(y)?.with_sign(s))
    }

    /// Whether `π_*X = 0`: every component of `X` carries at least one `∂/∂p` factor.
    pub fn is_vertical(&self, x: &MultiVec) -> bool {
        let base_mask = (1u32 << self.base_dim()) - 1;
        x.comps().all(|(b, _)| b.0 & !base_mask != 0)
    }

    fn require_kernel(&self, y: &FieldWedge) -> Result<()> {
        for (_, fields) in &y.terms {
            for f in fields {
                self.check_base(f)?;
            }
        }
        if !y.ce_differential(self.base_dim()).is_zero() {
            return Err(Error::InvalidInput("multivector field is not in the Lie kernel".into()));
        }
        Ok(())
    }

    /// Checks the momentum/position bracket relations on one set of inputs.
    pub fn verify_brackets(&self, inputs: &PhaseInputs, conventions: Conventions) -> Result<PhaseBracketReport> {
        self.require_kernel(&inputs.y1)?;
        self.require_kernel(&inputs.y2)?;
        let sys = self.system(conventions)?;
        let dim = self.base_dim();
        let s = inputs.y1.degree().unwrap_or(0);
        let t = inputs.y2.degree().unwrap_or(0);

        let mut momentum_routes = Form::zero(self.dim(), 0);
        let mut momentum_field = Vec::new();
        let mut pairs = Vec::new();
        for y in [&inputs.y1, &inputs.y2] {
            let lift = self.momentum_form(y)?;
            let pointwise = self.momentum_form_pointwise(&y.to_multivec(dim))?;
            if momentum_routes.is_zero() {
                momentum_routes = &lift - &pointwise;
            }
            momentum_field.push(sys.pair_residual(&lift, &self.momentum_field(y, conventions)?));
            pairs.push(sys.pair(&lift)?);
        }

        let (momenta, momenta_printed) = if s + t <= self.k + 1 {
            let br = sys.poisson(&pairs[0], &pairs[1]).alpha;
            let bracket = inputs.y1.to_multivec(dim).schouten(&inputs.y2.to_multivec(dim));
            let p = self.momentum_form_pointwise(&bracket)?;
            let (lift1, lift2) = (self.complete_lift(&inputs.y1)?, self.complete_lift(&inputs.y2)?);
            let base = &br + &p.with_sign(sign((t * s + s + t) as i64));
            let d21 = lift2.interior(&lift1.interior(&self.theta)).d();
            let d12 = lift1.interior(&lift2.interior(&self.theta)).d();
            let exact = &base + &d21.with_sign(sign((t * s + s) as i64) * zeta(s + t)?);
            let printed = &base + &d12.with_sign(zeta(s + 1)? * zeta(t + 1)?);
            (Some(exact), Some(printed))
        } else {
            (None, None)
        };

        let pos_a = self.position_form(&inputs.alpha)?;
        let pos_b = self.position_form(&inputs.beta)?;
        let pa = sys.pair(&pos_a)?;
        let pb = sys.pair(&pos_b)?;
        let vertical = self.is_vertical(&pa.field) && self.is_vertical(&pb.field);
        let positions = sys.poisson(&pa, &pb).alpha;

        let (mixed, mixed_printed) = if pos_a.degree() + t <= self.k {
            let j = t;
            let br = sys.poisson(&pa, &pairs[1]).alpha;
            let y = inputs.y2.to_multivec(dim);
            let rhs = self.embed(&y.interior(&inputs.alpha.d()));
            let exact = &br - &rhs.clone().with_sign(sign(j as i64) * zeta(j)?);
            let printed = &br + &rhs.with_sign(zeta(j)?);
            (Some(exact), Some(printed))
        } else {
            (None, None)
        };

        Ok(PhaseBracketReport {
            momentum_routes,
            momentum_field,
            momenta,
            momenta_printed,
            positions,
            positions_vertical: vertical,
            mixed,
            mixed_printed,
        })
    }
}

/// Inputs for [`PhaseSpace::verify_brackets`]: two Lie-kernel elements and two base forms.
#[derive(Clone, Debug)]
pub struct PhaseInputs {
    pub y1: FieldWedge,
    pub y2: FieldWedge,
    pub alpha: Form,
    pub beta: Form,
}

#[derive(Clone, Debug)]
pub struct PhaseBracketReport {
    /// Lift formula minus pointwise formula for `P(Y₁)`.
    pub momentum_routes: Form,
    /// `ζ(l)Y♯` paired against `P(Y)` for `Y₁` and `Y₂`.
    pub momentum_field: Vec<Form>,
    /// `{P(Y₁),P(Y₂)} + (−1)^{ts+s+t}P([Y₁,Y₂]) + (−1)^{ts+s}ζ(s+t)d(Y₂♯⌟(Y₁♯⌟θ))`.
    pub momenta: Option<Form>,
    /// The same relation with the exact term written as `ζ(s+1)ζ(t+1)d(Y₁♯⌟(Y₂♯⌟θ))`.
    /// It agrees with `momenta` when `t` is odd and `s` is even, and is not part of `is_zero`.
    pub momenta_printed: Option<Form>,
    /// `{π*α, π*β}`.
    pub positions: Form,
    /// The solved fields of `π*α` and `π*β` have no `∂/∂q` components.
    pub positions_vertical: bool,
    /// `{π*α, P(Y₂)} − (−1)^t ζ(t)π*(Y₂⌟dα)`.
    pub mixed: Option<Form>,
    /// `{π*α, P(Y₂)} + ζ(t)π*(Y₂⌟dα)`, which agrees with `mixed` for odd `t` and is not part
    /// of `is_zero`.
    pub mixed_printed: Option<Form>,
}

impl PhaseBracketReport {
    pub fn is_zero(&self) -> bool {
        self.momentum_routes.is_zero()
            && self.momentum_field.iter().all(Form::is_zero)
            && self.momenta.as_ref().map_or(true, Form::is_zero)
            && self.positions.is_zero()
            && self.positions_vertical
            && self.mixed.as_ref().map_or(true, Form::is_zero)
    }
}

/// A random element of the Lie kernel in degree `l` on an `n`-dimensional base.
///
/// Either a wedge of fields along some coordinates with coefficients in the others, which
/// pairwise commute, or a kernel element of a sample Lie algebra action.
pub fn random_kernel_element(r: &mut Rng8, n: usize, l: usize, shape: Shape) -> FieldWedge {
    if l == 1 && r.gen_bool(0.5) {
        return FieldWedge::single(vec![random::multivec(r, n, 1, shape)]);
    }
    if r.gen_bool(0.3) {
        let action = random::action(r, n);
        let kernel = action.algebra().lie_kernel(l);
        if let Some(p) = kernel.choose(r) {
            return action.factors(p);
        }
    }
    let mut coords: Vec<usize> = (0..n).collect();
    coords.shuffle(r);
    let m = r.gen_range(l..=n);
    let (active, passive) = coords.split_at(m);
    let mut terms = Vec::new();
    for _ in 0..r.gen_range(1..=2) {
        let fields = (0..l)
            .map(|_| {
                let mut comps = vec![Polynomial::zero(); n];
                for &i in active {
                    if r.gen_bool(0.6) {
                        comps[i] = passive_polynomial(r, passive, shape);
                    }
                }
                MultiVec::vector(&comps)
            })
            .collect();
        terms.push((random::small_rational(r), fields));
    }
    FieldWedge { terms }
}

fn passive_polynomial(r: &mut Rng8, passive: &[usize], shape: Shape) -> Polynomial {
    if passive.is_empty() {
        return Polynomial::constant(random::small_rational(r));
    }
    let p = random::polynomial(r, passive.len(), shape);
    let images: Vec<Polynomial> = passive.iter().map(|&i| Polynomial::var(i)).collect();
    p.substitute(&images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multisymplectic::Sign;
    use crate::poly::rat;

    fn q(i: usize) -> Polynomial {
        Polynomial::var(i)
    }

    #[test]
    fn build_shapes() {
        let ps = PhaseSpace::build(Chart::numbered("q", 3), 1).unwrap();
        assert_eq!(ps.dim(), 6);
        assert_eq!(ps.total_chart().names()[3..], ["p1", "p2", "p3"]);
        let mut theta = Form::zero(6, 1);
        for i in 0..3 {
            theta.add_comp(Blade::single(i), q(3 + i));
        }
        assert_eq!(ps.theta(), &theta);
        assert!((&ps.theta().d() + ps.omega()).is_zero());

        let ps = PhaseSpace::build(Chart::numbered("q", 3), 2).unwrap();
        assert_eq!(ps.total_chart().names()[3..], ["p12", "p13", "p23"]);
        assert!(ps.system(Conventions::default()).unwrap().status().nondegenerate);
        assert!(PhaseSpace::build(Chart::numbered("q", 3), 4).is_err());
        assert!(PhaseSpace::build(Chart::numbered("q", 3), 0).is_err());
    }

    #[test]
    fn lift_of_scaling_on_the_line() {
        let ps = PhaseSpace::build(Chart::numbered("q", 1), 1).unwrap();
        let y = MultiVec::monomial(1, &[0], q(0));
        let lifted = ps.lift_vector(&y).unwrap();
        let expected = &MultiVec::monomial(2, &[0], q(0)) - &MultiVec::monomial(2, &[1], q(1));
        assert_eq!(lifted, expected);
        let constant = ps.lift_vector(&MultiVec::partial(1, 0)).unwrap();
        assert_eq!(constant, MultiVec::partial(2, 0));
    }

    #[test]
    fn classical_momentum_sign() {
        let ps = PhaseSpace::build(Chart::numbered("q", 1), 1).unwrap();
        let p = ps.momentum_form(&FieldWedge::single(vec![MultiVec::partial(1, 0)])).unwrap();
        assert_eq!(p, Form::scalar(2, -q(1)));
    }

    #[test]
    fn lifts_preserve_theta_and_are_natural() {
        let mut r = random::rng(11);
        let shape = Shape {
            max_coeff_degree: 2,
            max_terms: 2,
            max_comps: 3,
        };
        for k in 1..=3 {
            let ps = PhaseSpace::build(Chart::numbered("q", 3), k).unwrap();
            for _ in 0..6 {
                let y = random::multivec(&mut r, 3, 1, shape);
                let z = random::multivec(&mut r, 3, 1, shape);
                let (ly, lz) = (ps.lift_vector(&y).unwrap(), ps.lift_vector(&z).unwrap());
                assert!(ly.lie(ps.theta()).is_zero());
                let a = rat(2, 3);
                let sum = &y.scale(&a) + &z;
                assert_eq!(ps.lift_vector(&sum).unwrap(), &ly.scale(&a) + &lz);
                let bracket = ps.lift_vector(&y.lie_bracket(&z)).unwrap();
                assert_eq!(bracket, ly.lie_bracket(&lz));
            }
        }
    }

    #[test]
    fn momentum_routes_agree_and_pair_with_lift() {
        let mut r = random::rng(5);
        let shape = Shape {
            max_coeff_degree: 2,
            max_terms: 2,
            max_comps: 2,
        };
        for k in 1..=3 {
            let ps = PhaseSpace::build(Chart::numbered("q", 3), k).unwrap();
            let sys = ps.system(Conventions::default()).unwrap();
            for l in 1..=k {
                for _ in 0..4 {
                    let y = random_kernel_element(&mut r, 3, l, shape);
                    assert!(y.ce_differential(3).is_zero());
                    let a = ps.momentum_form(&y).unwrap();
                    let b = ps.momentum_form_pointwise(&y.to_multivec(3)).unwrap();
                    assert_eq!(a, b);
                    let x = ps.momentum_field(&y, Conventions::default()).unwrap();
                    assert!(sys.pair_residual(&a, &x).is_zero());
                }
            }
            let zero = ps.momentum_form_pointwise(&MultiVec::zero(3, 1)).unwrap();
            assert!(zero.is_zero());
        }
    }

    #[test]
    fn position_forms_have_vertical_fields() {
        let mut r = random::rng(9);
        let ps = PhaseSpace::build(Chart::numbered("q", 3), 2).unwrap();
        let sys = ps.system(Conventions::default()).unwrap();
        let shape = Shape::default();
        for deg in 0..=1 {
            let alpha = random::form(&mut r, 3, deg, shape);
            let x = sys.hamiltonian_field(&ps.position_form(&alpha).unwrap()).unwrap();
            assert!(ps.is_vertical(&x));
        }
        assert_eq!(ps.position_form(&Form::dx(3, 0)).unwrap(), Form::dx(6, 0));
    }

    #[test]
    fn classical_relations_on_cotangent_bundle() {
        let ps = PhaseSpace::build(Chart::numbered("q", 3), 1).unwrap();
        let x = MultiVec::monomial(3, &[1], q(0));
        let y = MultiVec::monomial(3, &[2], &q(1) * &q(1));
        let h = Form::scalar(3, &q(0) * &q(2));
        let inputs = PhaseInputs {
            y1: FieldWedge::single(vec![x.clone()]),
            y2: FieldWedge::single(vec![y.clone()]),
            alpha: h.clone(),
            beta: Form::scalar(3, q(1)),
        };
        for sgn in [Sign::Minus, Sign::Plus] {
            let conv = Conventions {
                hamiltonian: sgn,
                comomentum: Sign::Minus,
            };
            let report = ps.verify_brackets(&inputs, conv).unwrap();
            assert!(report.is_zero(), "{:?}", report);
            let sys = ps.system(conv).unwrap();
            let px = sys.pair(&ps.momentum_form(&inputs.y1).unwrap()).unwrap();
            let py = sys.pair(&ps.momentum_form(&inputs.y2).unwrap()).unwrap();
            let pxy = ps.momentum_form_pointwise(&x.lie_bracket(&y)).unwrap();
            assert_eq!(sys.poisson(&px, &py).alpha, pxy);
            let ph = sys.pair(&ps.position_form(&h).unwrap()).unwrap();
            let xh = ps.embed(&x.interior(&h.d()));
            assert_eq!(sys.poisson(&ph, &px).alpha, -xh);
        }
    }

    #[test]
    fn commuting_constant_fields_keep_the_exact_term() {
        let ps = PhaseSpace::build(Chart::numbered("q", 3), 3).unwrap();
        let y1 = FieldWedge::single(vec![MultiVec::partial(3, 0)]);
        let y2 = FieldWedge::single(vec![MultiVec::partial(3, 1)]);
        let l1 = ps.complete_lift(&y1).unwrap();
        let l2 = ps.complete_lift(&y2).unwrap();
        let dterm = l1.interior(&l2.interior(ps.theta())).d();
        assert!(!dterm.is_zero());
        let inputs = PhaseInputs {
            y1,
            y2,
            alpha: Form::dx(3, 2),
            beta: Form::zero(3, 1),
        };
        let report = ps.verify_brackets(&inputs, Conventions::default()).unwrap();
        assert!(report.is_zero(), "{:?}", report);
        assert!(!report.momenta_printed.unwrap().is_zero());
    }

    #[test]
    fn bivector_momenta_with_nonzero_bracket() {
        let ps = PhaseSpace::build(Chart::numbered("q", 4), 3).unwrap();
        let y1 = FieldWedge::single(vec![MultiVec::partial(4, 0), MultiVec::partial(4, 1)]);
        let y2 = FieldWedge::single(vec![MultiVec::monomial(4, &[2], q(0)), MultiVec::partial(4, 3)]);
        let bracket = y1.to_multivec(4).schouten(&y2.to_multivec(4));
        assert!(!bracket.is_zero());
        let inputs = PhaseInputs {
            y1,
            y2,
            alpha: Form::scalar(4, &q(0) * &q(3)),
            beta: Form::dx(4, 1),
        };
        for sgn in [Sign::Minus, Sign::Plus] {
            let conv = Conventions {
                hamiltonian: sgn,
                comomentum: Sign::Minus,
            };
            let report = ps.verify_brackets(&inputs, conv).unwrap();
            assert!(report.is_zero(), "{:?}", report);
        }
    }

    #[test]
    fn random_kernel_relations() {
        let mut r = random::rng(21);
        let shape = Shape {
            max_coeff_degree: 2,
            max_terms: 2,
            max_comps: 2,
        };
        for (n, k) in [(3, 1), (3, 2), (3, 3), (4, 2)] {
            let ps = PhaseSpace::build(Chart::numbered("q", n), k).unwrap();
            for _ in 0..3 {
                let s = r.gen_range(1..=k);
                let t = r.gen_range(1..=k);
                let inputs = PhaseInputs {
                    y1: random_kernel_element(&mut r, n, s, shape),
                    y2: random_kernel_element(&mut r, n, t, shape),
                    alpha: { let d = r.gen_range(0..k); random::form(&mut r, n, d, shape) },
                    beta: { let d = r.gen_range(0..k); random::form(&mut r, n, d, shape) },
                };
                let report = ps.verify_brackets(&inputs, Conventions::default()).unwrap();
                assert!(report.is_zero(), "n={} k={} s={} t={} {:?}", n, k, s, t, report);
            }
        }
    }

    #[test]
    fn lifted_actions_give_exact_comomentum_maps() {
        use crate::comomentum::{build_exact, closure_defect, kernel_pairs, verify_weak};
        for (n, k) in [(3, 1), (3, 2), (3, 3), (4, 2)] {
            let ps = PhaseSpace::build(Chart::numbered("q", n), k).unwrap();
            for action in [random::rotation_action(n), random::affine_action(n), random::translation_action(n, &[0, 2])] {
                let lifted = ps.lift_action(&action).unwrap();
                for sgn in [Sign::Minus, Sign::Plus] {
                    let conv = Conventions {
                        hamiltonian: sgn,
                        comomentum: sgn,
                    };
                    let sys = ps.system(conv).unwrap();
                    let map = build_exact(&sys, ps.theta(), &lifted).unwrap();
                    assert!(verify_weak(&map, &sys).unwrap().is_zero());
                    for (p, q) in kernel_pairs(&map) {
                        assert!(closure_defect(&map, &sys, &p, &q).unwrap().closed);
                    }
                }
                let sys = ps.system(Conventions::default()).unwrap();
                let map = build_exact(&sys, ps.theta(), &lifted).unwrap();
                for l in 1..=k.min(action.algebra().dim()) {
                    for p in action.algebra().lie_kernel(l) {
                        let direct = ps.momentum_form(&action.factors(&p)).unwrap();
                        assert_eq!(map.eval(&p).unwrap(), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn mixed_relation_sign_for_bivectors() {
        let ps = PhaseSpace::build(Chart::numbered("q", 3), 3).unwrap();
        let inputs = PhaseInputs {
            y1: FieldWedge::single(vec![MultiVec::partial(3, 0)]),
            y2: FieldWedge::single(vec![MultiVec::partial(3, 0), MultiVec::partial(3, 2)]),
            alpha: Form::monomial(3, &[2], q(0)),
            beta: Form::zero(3, 0),
        };
        for sgn in [Sign::Minus, Sign::Plus] {
            let conv = Conventions {
                hamiltonian: sgn,
                comomentum: sgn,
            };
            let report = ps.verify_brackets(&inputs, conv).unwrap();
            assert!(report.is_zero(), "{:?}", report);
            assert_eq!(report.mixed_printed.unwrap(), Form::constant(4, int(2)));
        }
    }

    #[test]
    fn rejects_fields_outside_the_kernel() {
        let ps = PhaseSpace::build(Chart::numbered("q", 2), 2).unwrap();
        let y = FieldWedge::single(vec![MultiVec::partial(2, 0), MultiVec::monomial(2, &[1], q(0))]);
        let inputs = PhaseInputs {
            y1: y.clone(),
            y2: y,
            alpha: Form::zero(2, 0),
            beta: Form::zero(2, 0),
        };
        assert!(ps.verify_brackets(&inputs, Conventions::default()).is_err());
    }
}
