//! Homotopy co-momentum maps: verification, construction from an invariant primitive,
//! preservation classification and the bracket closure defect.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exterior::{sign, Blade};
use crate::lie::{Action, WedgePower};
use crate::linalg::{Echelon, SparseRow};
use crate::multisymplectic::{classify_form, zeta, Classification, Level, PlecticSystem};
use crate::{Form, MultiVec};

/// Components `f_k`, each stored as images of a list of elements of `Λ^k g` and extended
/// linearly.
#[derive(Clone, Debug)]
pub struct ComomentumMap {
    action: Action,
    n: usize,
    weak: bool,
    components: BTreeMap<usize, Vec<(WedgePower, Form)>>,
}

impl ComomentumMap {
    pub fn new(action: Action, n: usize, weak: bool) -> Self {
        ComomentumMap {
            action,
            n,
            weak,
            components: BTreeMap::new(),
        }
    }

    pub fn action(&self) -> &Action {
        &self.action
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_weak(&self) -> bool {
        self.weak
    }

    pub fn components(&self, k: usize) -> &[(WedgePower, Form)] {
        self.components.get(&k).map_or(&[], Vec::as_slice)
    }

    /// Record `f_k(p) = f`.
    pub fn set(&mut self, p: WedgePower, f: Form) -> Result<()> {
        let k = p.degree();
        if k == 0 || k > self.n {
            return Err(Error::InvalidInput(format!("component degree {k} outside 1..={}", self.n)));
        }
        if p.dim() != self.action.algebra().dim() {
            return Err(Error::ChartMismatch(p.dim(), self.action.algebra().dim()));
        }
        if f.dim() != self.action.dim() {
            return Err(Error::ChartMismatch(f.dim(), self.action.dim()));
        }
        if !f.is_zero() && f.degree() != self.n - k {
            return Err(Error::DegreeMismatch(f.degree(), self.n - k));
        }
        if self.weak && !self.action.algebra().ce_differential(&p).is_zero() {
            return Err(Error::InvalidInput("weak maps are defined on Lie kernels only".into()));
        }
        let f = if f.is_zero() { Form::zero(self.action.dim(), self.n - k) } else { f };
        self.components.entry(k).or_default().push((p, f));
        Ok(())
    }

    /// `f_k(p)` by linear extension; `f_0 = 0`.
    pub fn eval(&self, p: &WedgePower) -> Result<Form> {
        let k = p.degree();
        let dim = self.action.dim();
        if k == 0 || k > self.n || p.is_zero() {
            return Ok(Form::zero(dim, self.n.saturating_sub(k)));
        }
        let stored = self.components(k);
        let blades = Blade::all(p.dim(), k);
        let mut ech = Echelon::new(stored.len());
        for b in &blades {
            let row: SparseRow = stored
                .iter()
                .enumerate()
                .map(|(i, (q, _))| (i, q.coeff(*b)))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            ech.push(row, p.coeff(*b));
        }
        let coeffs = ech
            .solve()
            .ok_or_else(|| Error::InvalidInput(format!("f_{k} is not defined on this element")))?;
        let mut out = Form::zero(dim, self.n - k);
        for (c, (_, f)) in coeffs.iter().zip(stored) {
            if !c.is_zero() {
                out = &out + &f.scale(c);
            }
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualEntry {
    pub k: usize,
    pub p: WedgePower,
    pub residual: Form,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ComomentumReport {
    pub entries: Vec<ResidualEntry>,
}

impl ComomentumReport {
    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.residual.is_zero())
    }

    pub fn first_nonzero(&self) -> Option<&ResidualEntry> {
        self.entries.iter().find(|e| !e.residual.is_zero())
    }
}

fn check_map(map: &ComomentumMap, sys: &PlecticSystem) -> Result<()> {
    if map.action.dim() != sys.dim() {
        return Err(Error::ChartMismatch(map.action.dim(), sys.dim()));
    }
    if map.n != sys.n() {
        return Err(Error::DegreeMismatch(map.n, sys.n()));
    }
    Ok(())
}

/// `ζ(k)` scaled by the co-momentum convention: the map satisfies
/// `df_k(p) = s·V_p⌟ω − f_{k−1}(∂p)` with `s = c·ζ(k)` and `c = −1` for the formal convention.
fn comomentum_factor(sys: &PlecticSystem, k: usize) -> i32 {
    sys.conventions().comomentum.value() * zeta(k).expect("k >= 1")
}

/// Residuals `df_k(p) + f_{k−1}(∂p) − c·ζ(k)V_p⌟ω` on every basis wedge, `k = 1..n`.
pub fn verify(map: &ComomentumMap, sys: &PlecticSystem) -> Result<ComomentumReport> {
    check_map(map, sys)?;
    if map.weak {
        return Err(Error::InvalidInput("use verify_weak for weak maps".into()));
    }
    let g = map.action.algebra();
    let mut report = ComomentumReport::default();
    for k in 1..=map.n.min(g.dim()) {
        for b in Blade::all(g.dim(), k) {
            let p = WedgePower::basis_blade(g.dim(), b);
            let lower = map.eval(&g.ce_differential(&p))?;
            let vp = map.action.generator(&p).interior(sys.omega());
            let residual = &(&map.eval(&p)?.d() + &lower) - &vp.with_sign(comomentum_factor(sys, k));
            report.entries.push(ResidualEntry { k, p, residual });
        }
    }
    Ok(report)
}

/// Residuals `df_k(p) − c·ζ(k)V_p⌟ω` on a basis of each Lie kernel.
pub fn verify_weak(map: &ComomentumMap, sys: &PlecticSystem) -> Result<ComomentumReport> {
    check_map(map, sys)?;
    let g = map.action.algebra();
    let mut report = ComomentumReport::default();
    for k in 1..=map.n.min(g.dim()) {
        for p in g.lie_kernel(k) {
            let vp = map.action.generator(&p).interior(sys.omega());
            let residual = &map.eval(&p)?.d() - &vp.with_sign(comomentum_factor(sys, k));
            report.entries.push(ResidualEntry { k, p, residual });
        }
    }
    Ok(report)
}

/// The weak map `f_l(p) = −ζ(l+1)V_p⌟θ` for an action preserving `θ` with `dθ = −ω`.
pub fn build_exact(sys: &PlecticSystem, theta: &Form, action: &Action) -> Result<ComomentumMap> {
    if action.dim() != sys.dim() {
        return Err(Error::ChartMismatch(action.dim(), sys.dim()));
    }
    if !(&theta.d() + sys.omega()).is_zero() {
        return Err(Error::InvalidInput("d(theta) must equal -omega".into()));
    }
    for (i, v) in action.generators().iter().enumerate() {
        if !v.lie(theta).is_zero() {
            return Err(Error::InvalidInput(format!("generator {} does not preserve theta", i + 1)));
        }
    }
    let n = sys.n();
    let c = -sys.conventions().comomentum.value();
    let mut map = ComomentumMap::new(action.clone(), n, true);
    for l in 1..=n.min(action.algebra().dim()) {
        for p in action.algebra().lie_kernel(l) {
            let f = action.generator(&p).interior(theta).with_sign(-c * zeta(l + 1)?);
            map.set(p, f)?;
        }
    }
    Ok(map)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PreservationReport {
    pub level: Level,
    pub generators: Vec<Classification>,
}

/// Minimum over generators of the level of `L_{V_ξ}H`.
pub fn classify_preservation(action: &Action, sys: &PlecticSystem) -> Result<PreservationReport> {
    let h = sys
        .hamiltonian()
        .ok_or_else(|| Error::InvalidInput("system has no Hamiltonian form".into()))?;
    let mut generators = Vec::new();
    for (i, v) in action.generators().iter().enumerate() {
        if !v.lie(sys.omega()).is_zero() {
            return Err(Error::InvalidInput(format!("generator {} does not preserve omega", i + 1)));
        }
        generators.push(classify_form(&v.lie(&h.alpha)));
    }
    let level = generators.iter().map(|c| c.level).min().unwrap_or(Level::Strict);
    Ok(PreservationReport { level, generators })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumEntry {
    pub k: usize,
    pub p: WedgePower,
    pub conserved: Classification,
    pub symmetry: Classification,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConservationReport {
    pub preservation: Level,
    pub required: Level,
    pub entries: Vec<MomentumEntry>,
}

impl ConservationReport {
    pub fn transfer_ok(&self) -> bool {
        self.entries
            .iter()
            .all(|e| e.conserved.level >= self.required && e.symmetry.level >= self.required)
    }
}

/// Classifies every `f_k(p)` and `V_p` on the Lie-kernel bases. Local or global preservation
/// requires local results, strict preservation requires global ones.
pub fn momentum_conservation_report(map: &ComomentumMap, sys: &PlecticSystem) -> Result<ConservationReport> {
    check_map(map, sys)?;
    let preservation = classify_preservation(&map.action, sys)?.level;
    let required = match preservation {
        Level::Strict => Level::Global,
        Level::Global | Level::Local => Level::Local,
        Level::None => Level::None,
    };
    let h = sys.hamiltonian().expect("checked by classify_preservation");
    let g = map.action.algebra();
    let mut entries = Vec::new();
    for k in 1..=map.n.min(g.dim()) {
        for p in g.lie_kernel(k) {
            let f = map.eval(&p)?;
            let conserved = classify_form(&h.field.lie(&f));
            let vp = map.action.generator(&p);
            let symmetry = sys.classify_symmetry(&vp, false)?;
            entries.push(MomentumEntry {
                k,
                p,
                conserved,
                symmetry,
            });
        }
    }
    Ok(ConservationReport {
        preservation,
        required,
        entries,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureDefect {
    /// `{f_k(p), f_l(q)} − c'·f_{k+l−1}([p,q])` with `c' = (−1)^{k+l+kl}` under the formal
    /// convention.
    pub defect: Form,
    pub closed: bool,
    /// Predicted Hamiltonian field of `{f_k(p), f_l(q)}` and its pair residual.
    pub field: MultiVec,
    pub field_residual: Form,
    /// The same check with the opposite overall sign on the predicted field.
    pub flipped_field_residual: Form,
}

/// Closure defect for kernel elements `p`, `q`, with the Hamiltonian field of
/// `{f_k(p), f_l(q)}` predicted as `−h·ζ(k)ζ(l)[V_p,V_q]`, where `h` is the Hamiltonian sign.
pub fn closure_defect(map: &ComomentumMap, sys: &PlecticSystem, p: &WedgePower, q: &WedgePower) -> Result<ClosureDefect> {
    check_map(map, sys)?;
    let g = map.action.algebra();
    if !g.ce_differential(p).is_zero() || !g.ce_differential(q).is_zero() {
        return Err(Error::InvalidInput("closure defect needs Lie-kernel arguments".into()));
    }
    let (k, l) = (p.degree(), q.degree());
    if k == 0 || l == 0 || k + l - 1 > map.n {
        return Err(Error::InvalidInput("need 1 <= k, l and k + l - 1 <= n".into()));
    }
    let fp = map.eval(p)?;
    let fq = map.eval(q)?;
    let (vp, vq) = (map.action.generator(p), map.action.generator(q));
    let a = sys.pair(&fp)?;
    let b = sys.pair(&fq)?;
    let bracket = sys.poisson(&a, &b).alpha;
    let c = -sys.conventions().comomentum.value();
    let image = map.eval(&g.wedge_bracket(p, q))?;
    let defect = &bracket - &image.with_sign(c * sign((k + l + k * l) as i64));
    let closed = defect.is_closed();
    let h = sys.conventions().hamiltonian.value();
    let field = vp.schouten(&vq).with_sign(-h * zeta(k)? * zeta(l)?);
    let field_residual = sys.pair_residual(&bracket, &field);
    let flipped_field_residual = sys.pair_residual(&bracket, &-field.clone());
    Ok(ClosureDefect {
        defect,
        closed,
        field,
        field_residual,
        flipped_field_residual,
    })
}

/// Pairs of kernel basis elements `(p, q)` with `k + l − 1 ≤ n`.
pub fn kernel_pairs(map: &ComomentumMap) -> Vec<(WedgePower, WedgePower)> {
    let g = map.action.algebra();
    let mut out = Vec::new();
    for k in 1..=map.n.min(g.dim()) {
        for l in 1..=map.n.min(g.dim()) {
            if k + l - 1 > map.n {
                continue;
            }
            for p in g.lie_kernel(k) {
                for q in g.lie_kernel(l) {
                    out.push((p.clone(), q.clone()));
                }
            }
        }
    }
    out
}
