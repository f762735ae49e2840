//! Correspondences in cohomology: diagonals, the small diagonal, Künneth and
//! polarized CK projectors, composition / transpose / action, and the checks
//! built on them (MCK vanishing, pure degree, diagonal·h decomposition).
//!
//! All operations reduce to pull–cup–push on product spaces, so every Koszul
//! sign comes from the one convention fixed in `model`.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::linalg::SparseMatrix;
use crate::model::{
    h_power, GradedClass, ModelError, ModelSpec, Space, VarietyModel,
};
use crate::rat::Rat;

/// A class on a two-factor product, read as acting from factor 1 to factor 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Correspondence {
    pub class: GradedClass,
    source: Arc<VarietyModel>,
    target: Arc<VarietyModel>,
}

impl Correspondence {
    pub fn new(class: GradedClass) -> Result<Self, ModelError> {
        if class.space.num_factors() != 2 {
            return Err(ModelError::BadFactor(class.space.num_factors()));
        }
        let source = class.space.factors()[0].clone();
        let target = class.space.factors()[1].clone();
        Ok(Correspondence { class, source, target })
    }

    pub fn source(&self) -> &Arc<VarietyModel> {
        &self.source
    }

    pub fn target(&self) -> &Arc<VarietyModel> {
        &self.target
    }

    pub fn zero_like(&self) -> Correspondence {
        Correspondence {
            class: GradedClass::zero(self.class.space.clone()),
            source: self.source.clone(),
            target: self.target.clone(),
        }
    }

    /// Pull–cup–push action on a class living on the source variety.
    pub fn act(&self, x: &GradedClass) -> Result<GradedClass, ModelError> {
        if x.space.num_factors() != 1 || x.space.factors()[0] != self.source {
            return Err(ModelError::SpaceMismatch);
        }
        let px = x.pullback(&self.class.space, &[0])?;
        px.cup(&self.class)?.pushforward(&[1])
    }

    /// `g ∘ f` (first `f`, then `g`), via the triple product.
    pub fn compose(f: &Correspondence, g: &Correspondence) -> Result<Correspondence, ModelError> {
        if f.target != g.source {
            return Err(ModelError::SpaceMismatch);
        }
        let triple = Space::product(vec![f.source.clone(), f.target.clone(), g.target.clone()]);
        let pf = f.class.pullback(&triple, &[0, 1])?;
        let pg = g.class.pullback(&triple, &[1, 2])?;
        Correspondence::new(pf.cup(&pg)?.pushforward(&[0, 2])?)
    }

    /// Swaps the two factors with the Koszul sign (−1)^(|x||y|).
    pub fn transpose(&self) -> Correspondence {
        let space = Space::product(vec![self.target.clone(), self.source.clone()]);
        let mut out = GradedClass::zero(space.clone());
        for (&i, v) in &self.class.coeffs {
            let p = self.class.space.decode(i);
            let (da, db) = (self.source.degree(p[0]), self.target.degree(p[1]));
            let idx = space.encode(&[p[1], p[0]]);
            let coeff = if (da * db) % 2 == 1 { -v.clone() } else { v.clone() };
            out.add_term(idx, coeff);
        }
        Correspondence { class: out, source: self.target.clone(), target: self.source.clone() }
    }

    pub fn add(&self, other: &Correspondence) -> Result<Correspondence, ModelError> {
        Correspondence::new(self.class.add(&other.class)?)
    }

    pub fn sub(&self, other: &Correspondence) -> Result<Correspondence, ModelError> {
        Correspondence::new(self.class.sub(&other.class)?)
    }
}

/// Poincaré pairing matrix `G[c][a] = ∫ e_c ∪ e_a` of a single model.
fn pairing_matrix(model: &Arc<VarietyModel>) -> SparseMatrix {
    let s = Space::single(model.clone());
    let n = model.dim();
    let mut g = SparseMatrix::new(n, n);
    for c in 0..n {
        let ec = GradedClass::basis(s.clone(), c);
        for a in 0..n {
            let ea = GradedClass::basis(s.clone(), a);
            let v = ec.cup(&ea).unwrap().integrate();
            g.set(c, a, v).unwrap();
        }
    }
    g
}

/// The diagonal correspondence, normalized so it acts as the identity on
/// every class (solved from the Poincaré pairing, which pins all signs).
pub fn diagonal(model: &Arc<VarietyModel>) -> Result<Correspondence, ModelError> {
    let g = pairing_matrix(model);
    let n = model.dim();
    let square = Space::power(model.clone(), 2);
    let mut class = GradedClass::zero(square.clone());
    for b in 0..n {
        let mut rhs = vec![Rat::zero(); n];
        rhs[b] = Rat::one();
        let col = g
            .solve(&rhs)
            .expect("dimensions fixed above")
            .ok_or_else(|| {
                ModelError::Inconsistent("Poincaré pairing is degenerate".into())
            })?;
        for (a, v) in col.into_iter().enumerate() {
            class.add_term(square.encode(&[a, b]), v);
        }
    }
    let delta = Correspondence::new(class)?;
    // defining property, checked on construction
    let s = Space::single(model.clone());
    for e in 0..n {
        let x = GradedClass::basis(s.clone(), e);
        if delta.act(&x)? != x {
            return Err(ModelError::Inconsistent(format!(
                "diagonal does not act as identity on basis element {e}"
            )));
        }
    }
    Ok(delta)
}

/// Class of the small diagonal on X³: p₁₂*Δ ∪ p₁₃*Δ, with the defining
/// property (Δˢᵐ)∗(x⊗y) = x∪y checked on construction.
pub fn small_diagonal(model: &Arc<VarietyModel>) -> Result<GradedClass, ModelError> {
    let delta = diagonal(model)?;
    let cube = Space::power(model.clone(), 3);
    let d12 = delta.class.pullback(&cube, &[0, 1])?;
    let d13 = delta.class.pullback(&cube, &[0, 2])?;
    let sm = d12.cup(&d13)?;
    // validate the action: pull x⊗y to (0,1), cup, push to 2
    let s = Space::single(model.clone());
    let n = model.dim();
    for a in 0..n {
        for b in 0..n {
            let ea = GradedClass::basis(s.clone(), a);
            let eb = GradedClass::basis(s.clone(), b);
            let xy = ea
                .pullback(&cube, &[0])?
                .cup(&eb.pullback(&cube, &[1])?)?;
            let got = xy.cup(&sm)?.pushforward(&[2])?;
            let want = ea.cup(&eb)?;
            if got != want {
                return Err(ModelError::Inconsistent(format!(
                    "small diagonal action mismatch on basis pair ({a},{b})"
                )));
            }
        }
    }
    Ok(sm)
}

/// Applies `fs[i]` to the i-th tensor slot of `gamma`:
/// `(f₁ × ⋯ × f_m)∗ Γ`, computed as pull–cup–push on the 2m-factor space.
pub fn tensor_act(fs: &[&Correspondence], gamma: &GradedClass) -> Result<GradedClass, ModelError> {
    let m = gamma.space.num_factors();
    if fs.len() != m {
        return Err(ModelError::SpaceMismatch);
    }
    for (i, f) in fs.iter().enumerate() {
        if gamma.space.factors()[i] != *f.source() {
            return Err(ModelError::SpaceMismatch);
        }
    }
    let mut factors: Vec<Arc<VarietyModel>> = gamma.space.factors().to_vec();
    factors.extend(fs.iter().map(|f| f.target().clone()));
    let big = Space::product(factors);
    let src: Vec<usize> = (0..m).collect();
    let mut acc = gamma.pullback(&big, &src)?;
    for (i, f) in fs.iter().enumerate() {
        acc = acc.cup(&f.class.pullback(&big, &[i, m + i])?)?;
    }
    let kept: Vec<usize> = (m..2 * m).collect();
    acc.pushforward(&kept)
}

/// Mutually orthogonal idempotents summing to the diagonal, acting as
/// Künneth projectors. Validated on construction.
#[derive(Debug, Clone)]
pub struct ProjectorSet {
    model: Arc<VarietyModel>,
    weights: Vec<usize>,
    projectors: Vec<Correspondence>,
}

impl ProjectorSet {
    pub fn model(&self) -> &Arc<VarietyModel> {
        &self.model
    }

    pub fn weights(&self) -> &[usize] {
        &self.weights
    }

    pub fn projector(&self, weight: usize) -> Option<&Correspondence> {
        self.weights.iter().position(|&w| w == weight).map(|i| &self.projectors[i])
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Correspondence)> {
        self.weights.iter().copied().zip(self.projectors.iter())
    }

    fn validate(
        model: &Arc<VarietyModel>,
        weights: &[usize],
        projectors: &[Correspondence],
    ) -> Result<(), ModelError> {
        let delta = diagonal(model)?;
        // sum = Δ
        let mut sum = projectors[0].clone();
        for p in &projectors[1..] {
            sum = sum.add(p)?;
        }
        if sum.class != delta.class {
            return Err(ModelError::ProjectorInvariant("Σⱼ πʲ ≠ Δ".into()));
        }
        for (i, (&wi, pi)) in weights.iter().zip(projectors).enumerate() {
            for (j, (&wj, pj)) in weights.iter().zip(projectors).enumerate() {
                let c = Correspondence::compose(pi, pj)?;
                let expect = if i == j { pi.class.clone() } else { GradedClass::zero(pi.class.space.clone()) };
                if c.class != expect {
                    return Err(ModelError::ProjectorInvariant(if i == j {
                        format!("π^{wi} not idempotent")
                    } else {
                        format!("π^{wi} ∘ π^{wj} ≠ 0")
                    }));
                }
            }
        }
        // Künneth action on every basis class
        let s = Space::single(model.clone());
        for e in 0..model.dim() {
            let x = GradedClass::basis(s.clone(), e);
            let deg = model.degree(e);
            for (&w, p) in weights.iter().zip(projectors) {
                let got = p.act(&x)?;
                let want = if w == deg { x.clone() } else { GradedClass::zero(s.clone()) };
                if got != want {
                    return Err(ModelError::ProjectorInvariant(format!(
                        "π^{w} acts wrongly on basis element of degree {deg}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// The explicit CK projectors of a polarized tate-odd model:
/// π^(2j) = (1/d)·h^(n−j) ⊗ hʲ for the even tower, and the middle projector
/// π^n = Δ − Σ_{j even} πʲ (never re-derived independently).
pub fn ck_projectors(model: &Arc<VarietyModel>) -> Result<ProjectorSet, ModelError> {
    let ModelSpec::TateOdd { n, d, b } = model.spec().clone() else {
        return Err(ModelError::InvalidSpec("CK projectors need a tate-odd model".into()));
    };
    let square = Space::power(model.clone(), 2);
    let delta = diagonal(model)?;
    let mut weights = Vec::new();
    let mut projectors = Vec::new();
    let mut even_sum = GradedClass::zero(square.clone());
    for j in 0..=n {
        let left = h_power(model, n - j).pullback(&square, &[0])?;
        let right = h_power(model, j).pullback(&square, &[1])?;
        let class = left.cup(&right)?.scale(&(Rat::one() / &d));
        even_sum = even_sum.add(&class)?;
        weights.push(2 * j);
        projectors.push(Correspondence::new(class)?);
    }
    if b > 0 {
        let middle = Correspondence::new(delta.class.sub(&even_sum)?)?;
        let pos = weights.iter().position(|&w| w > n).unwrap();
        weights.insert(pos, n);
        projectors.insert(pos, middle);
    }
    ProjectorSet::validate(model, &weights, &projectors)?;
    Ok(ProjectorSet { model: model.clone(), weights, projectors })
}

/// Full Künneth projector set of any model, read off from the diagonal:
/// πᵏ is the part of Δ whose second factor has degree k.
pub fn kunneth_projectors(model: &Arc<VarietyModel>) -> Result<ProjectorSet, ModelError> {
    let delta = diagonal(model)?;
    let space = delta.class.space.clone();
    let weights: Vec<usize> = (0..=model.top_degree())
        .filter(|&k| model.betti()[k] > 0)
        .collect();
    let mut projectors = Vec::new();
    for &k in &weights {
        let mut class = GradedClass::zero(space.clone());
        for (&i, v) in &delta.class.coeffs {
            let p = space.decode(i);
            if model.degree(p[1]) == k {
                class.add_term(i, v.clone());
            }
        }
        projectors.push(Correspondence::new(class)?);
    }
    ProjectorSet::validate(model, &weights, &projectors)?;
    Ok(ProjectorSet { model: model.clone(), weights, projectors })
}

/// The middle Künneth projector class τ, constructed by solving the linear
/// system "acts as the identity on the middle degree, zero elsewhere".
pub fn tau_class(model: &Arc<VarietyModel>) -> Result<GradedClass, ModelError> {
    let ModelSpec::TateOdd { n, .. } = model.spec() else {
        return Err(ModelError::InvalidSpec("τ needs a tate-odd model".into()));
    };
    let n_mid = *n;
    let g = pairing_matrix(model);
    let dim = model.dim();
    let square = Space::power(model.clone(), 2);
    let mut class = GradedClass::zero(square.clone());
    for b in 0..dim {
        let mut rhs = vec![Rat::zero(); dim];
        if model.degree(b) == n_mid {
            rhs[b] = Rat::one();
        }
        let col = g
            .solve(&rhs)
            .expect("dimensions fixed above")
            .ok_or_else(|| ModelError::Inconsistent("Poincaré pairing is degenerate".into()))?;
        for (a, v) in col.into_iter().enumerate() {
            class.add_term(square.encode(&[a, b]), v);
        }
    }
    Ok(class)
}

/// Outcome of the MCK vanishing check on one projector set.
#[derive(Debug, Clone)]
pub struct MckOutcome {
    /// triples (i,j,k) with i+j ≠ k whose transported component of Δˢᵐ is
    /// nonzero (must be empty)
    pub violations: Vec<(usize, usize, usize)>,
    /// triples with i+j = k and a nonzero component
    pub nonzero_components: Vec<(usize, usize, usize)>,
    pub triples_checked: usize,
    pub sum_reconstructs_small_diagonal: bool,
}

impl MckOutcome {
    pub fn pass(&self) -> bool {
        self.violations.is_empty() && self.sum_reconstructs_small_diagonal
    }
}

/// For every weight triple (i,j,k): transports the (π^i × π^j → π^k)
/// component of the small diagonal (via the transpose rule ᵗπ^i = π^(2n−i))
/// and records whether it vanishes. Components with i+j = k must sum back to
/// the small diagonal.
pub fn check_mck(model: &Arc<VarietyModel>, ps: &ProjectorSet) -> Result<MckOutcome, ModelError> {
    let sm = small_diagonal(model)?;
    let top = model.top_degree();
    let mut violations = Vec::new();
    let mut nonzero = Vec::new();
    let mut sum = GradedClass::zero(sm.space.clone());
    let mut checked = 0usize;
    for &i in ps.weights() {
        for &j in ps.weights() {
            for &k in ps.weights() {
                checked += 1;
                let (Some(pi), Some(pj), Some(pk)) = (
                    ps.projector(top - i),
                    ps.projector(top - j),
                    ps.projector(k),
                ) else {
                    return Err(ModelError::ProjectorInvariant(
                        "projector set not closed under transpose".into(),
                    ));
                };
                let comp = tensor_act(&[pi, pj, pk], &sm)?;
                if i + j != k {
                    if !comp.is_zero() {
                        violations.push((i, j, k));
                    }
                } else {
                    if !comp.is_zero() {
                        nonzero.push((i, j, k));
                    }
                    sum = sum.add(&comp)?;
                }
            }
        }
    }
    Ok(MckOutcome {
        violations,
        nonzero_components: nonzero,
        triples_checked: checked,
        sum_reconstructs_small_diagonal: sum == sm,
    })
}

/// Outcome of the pure-degree check on a correspondence.
#[derive(Debug, Clone)]
pub struct PurityOutcome {
    /// Künneth types (i,j) with a nonzero (π^i ⊗ π^j) component
    pub components: Vec<(usize, usize)>,
    pub total: usize,
    /// components violating i + j = total
    pub impure: Vec<(usize, usize)>,
}

impl PurityOutcome {
    pub fn pass(&self) -> bool {
        self.impure.is_empty()
    }
}

/// Lists every Künneth type (i,j) with a nonzero (π₁^i ⊗ π₂^j) component of
/// `p`; passes iff all of them satisfy i + j = total.
pub fn check_pure_degree(
    p: &Correspondence,
    ps1: &ProjectorSet,
    ps2: &ProjectorSet,
    total: usize,
) -> Result<PurityOutcome, ModelError> {
    if p.source() != ps1.model() || p.target() != ps2.model() {
        return Err(ModelError::SpaceMismatch);
    }
    let mut components = Vec::new();
    for (i, pi) in ps1.iter() {
        for (j, pj) in ps2.iter() {
            let comp = tensor_act(&[pi, pj], &p.class)?;
            if !comp.is_zero() {
                components.push((i, j));
            }
        }
    }
    let impure = components.iter().copied().filter(|&(i, j)| i + j != total).collect();
    Ok(PurityOutcome { components, total, impure })
}

/// Decomposition of Δ ∪ p₁*(h) in the basis {hʲ ⊗ h^(n+1−j)}.
#[derive(Debug, Clone)]
pub struct DeltaHOutcome {
    /// coefficients a₁..a_n in the h-power basis
    pub coefficients: Vec<Rat>,
    /// the odd ⊗ odd Künneth part of Δ ∪ p₁*(h) vanished
    pub odd_part_zero: bool,
    /// overall sign relating the h-basis equation to the one written in the
    /// anticanonical normalization K = −h
    pub anticanonical_sign: i32,
}

/// Expands Δ ∪ p₁*(h) in H^(2n+2)(X×X) and solves for the coefficients of
/// hʲ ⊗ h^(n+1−j), j = 1..n. The odd Künneth part must contribute zero.
pub fn delta_h_decomposition(model: &Arc<VarietyModel>) -> Result<DeltaHOutcome, ModelError> {
    let ModelSpec::TateOdd { n, .. } = model.spec().clone() else {
        return Err(ModelError::InvalidSpec("delta-h needs a tate-odd model".into()));
    };
    let delta = diagonal(model)?;
    let square = delta.class.space.clone();
    let lhs = delta.class.cup(&h_power(model, 1).pullback(&square, &[0])?)?;
    let odd_part_zero = lhs.coeffs.keys().all(|&i| {
        square
            .factor_degrees(i)
            .iter()
            .all(|&d| d % 2 == 0)
    });
    // columns: basis classes hʲ ⊗ h^(n+1−j); rows: ambient basis elements
    let cols: Vec<usize> = (1..=n).map(|j| square.encode(&[j, n + 1 - j])).collect();
    let mut row_idx: Vec<usize> = lhs.coeffs.keys().copied().collect();
    for &c in &cols {
        if !row_idx.contains(&c) {
            row_idx.push(c);
        }
    }
    row_idx.sort_unstable();
    let mut m = SparseMatrix::new(row_idx.len(), cols.len());
    let mut rhs = vec![Rat::zero(); row_idx.len()];
    for (r, &ri) in row_idx.iter().enumerate() {
        if let Some(v) = lhs.coeffs.get(&ri) {
            rhs[r] = v.clone();
        }
        for (c, &ci) in cols.iter().enumerate() {
            if ri == ci {
                m.set(r, c, Rat::one()).unwrap();
            }
        }
    }
    let solution = m
        .solve(&rhs)
        .expect("dimensions fixed above")
        .ok_or_else(|| ModelError::Inconsistent("Δ·p₁*(h) not decomposable in h-powers".into()))?;
    // K = −h: the left side carries one K, the right side n+1 of them
    let anticanonical_sign = if n % 2 == 0 { 1 } else { -1 };
    Ok(DeltaHOutcome { coefficients: solution, odd_part_zero, anticanonical_sign })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::varieties::*;
    use crate::model::{odd_gen, point_class};
    use crate::rat::{rat, rat_int};

    #[test]
    fn diagonal_acts_as_identity() {
        // constructor validates; also spot-check the odd part
        let y = y18();
        let d = diagonal(&y).unwrap();
        let v1 = odd_gen(&y, 1);
        assert_eq!(d.act(&v1).unwrap(), v1);
    }

    #[test]
    fn diagonal_self_intersection_is_euler_characteristic() {
        let y = y18();
        let d = diagonal(&y).unwrap();
        assert_eq!(d.class.cup(&d.class).unwrap().integrate(), rat_int(0));
        let f = ab2();
        let df = diagonal(&f).unwrap();
        assert_eq!(df.class.cup(&df.class).unwrap().integrate(), rat_int(0));
        let c = curve2();
        let dc = diagonal(&c).unwrap();
        // χ = 1 − 4 + 1 = −2
        assert_eq!(dc.class.cup(&dc.class).unwrap().integrate(), rat_int(-2));
    }

    #[test]
    fn small_diagonal_multiplies() {
        // constructor already asserts (Δˢᵐ)∗(x⊗y) = x∪y on all basis pairs
        let y = y18();
        let sm = small_diagonal(&y).unwrap();
        let cube = sm.space.clone();
        let h = h_power(&y, 1);
        let h2 = h_power(&y, 2);
        let xy = h
            .pullback(&cube, &[0])
            .unwrap()
            .cup(&h2.pullback(&cube, &[1]).unwrap())
            .unwrap();
        let got = xy.cup(&sm).unwrap().pushforward(&[2]).unwrap();
        assert_eq!(got, point_class(&y).scale(&rat_int(18)));
    }

    #[test]
    fn ck_projectors_validate_on_y_z_curve() {
        ck_projectors(&y18()).unwrap();
        ck_projectors(&z4()).unwrap();
        ck_projectors(&curve2()).unwrap();
    }

    #[test]
    fn kunneth_projectors_on_abelian_surface() {
        let ps = kunneth_projectors(&ab2()).unwrap();
        assert_eq!(ps.weights(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn ck_projector_actions() {
        let y = y18();
        let ps = ck_projectors(&y).unwrap();
        let p3 = ps.projector(3).unwrap();
        let v2 = odd_gen(&y, 2);
        assert_eq!(p3.act(&v2).unwrap(), v2);
        assert!(p3.act(&h_power(&y, 1)).unwrap().is_zero());
    }

    #[test]
    fn tau_solved_equals_middle_projector() {
        let y = y18();
        let ps = ck_projectors(&y).unwrap();
        let tau = tau_class(&y).unwrap();
        assert_eq!(tau, ps.projector(3).unwrap().class);
        // and equals Δ − (1/18)·Σ hʲ⊗h^(3−j)
        let d = diagonal(&y).unwrap();
        let square = d.class.space.clone();
        let mut dec = GradedClass::zero(square.clone());
        for j in 0..=3usize {
            let t = h_power(&y, j)
                .pullback(&square, &[0])
                .unwrap()
                .cup(&h_power(&y, 3 - j).pullback(&square, &[1]).unwrap())
                .unwrap();
            dec = dec.add(&t.scale(&rat(1, 18))).unwrap();
        }
        assert_eq!(tau, d.class.sub(&dec).unwrap());
    }

    #[test]
    fn tau_action() {
        let y = y18();
        let tau = Correspondence::new(tau_class(&y).unwrap()).unwrap();
        let v1 = odd_gen(&y, 1);
        assert_eq!(tau.act(&v1).unwrap(), v1);
        assert!(tau.act(&h_power(&y, 2)).unwrap().is_zero());
    }

    #[test]
    fn compose_unit_laws_and_functoriality() {
        let y = y18();
        let d = diagonal(&y).unwrap();
        let ps = ck_projectors(&y).unwrap();
        let p3 = ps.projector(3).unwrap();
        assert_eq!(Correspondence::compose(&d, p3).unwrap().class, p3.class);
        assert_eq!(Correspondence::compose(p3, &d).unwrap().class, p3.class);
        // act(compose(f,g), x) = act(g, act(f,x))
        let p2 = ps.projector(2).unwrap();
        let fg = Correspondence::compose(p2, p3).unwrap();
        let x = h_power(&y, 1);
        assert_eq!(fg.act(&x).unwrap(), p3.act(&p2.act(&x).unwrap()).unwrap());
    }

    #[test]
    fn transpose_rules() {
        let y = y18();
        let d = diagonal(&y).unwrap();
        assert_eq!(d.transpose().class, d.class);
        let ps = ck_projectors(&y).unwrap();
        for (w, p) in ps.iter() {
            assert_eq!(p.transpose().class, ps.projector(6 - w).unwrap().class);
            assert_eq!(p.transpose().transpose().class, p.class);
        }
    }

    #[test]
    fn lieberman_transport() {
        let y = y18();
        let ps = ck_projectors(&y).unwrap();
        let sm = small_diagonal(&y).unwrap();
        let d = diagonal(&y).unwrap();
        let p3 = ps.projector(3).unwrap();
        let p6 = ps.projector(6).unwrap();
        let lhs = tensor_act(&[p3, p3, &d], &sm).unwrap();
        let rhs = tensor_act(&[p3, p3, p6], &sm).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn mck_holds_for_y() {
        let y = y18();
        let ps = ck_projectors(&y).unwrap();
        let out = check_mck(&y, &ps).unwrap();
        assert!(out.pass(), "violations: {:?}", out.violations);
        assert!(out.nonzero_components.contains(&(3, 3, 6)));
    }

    #[test]
    fn delta_h_on_y_and_z() {
        let out = delta_h_decomposition(&y18()).unwrap();
        assert_eq!(out.coefficients, vec![rat(1, 18), rat(1, 18), rat(1, 18)]);
        assert!(out.odd_part_zero);
        let out_z = delta_h_decomposition(&z4()).unwrap();
        assert_eq!(out_z.coefficients, vec![rat(1, 4), rat(1, 4), rat(1, 4)]);
    }
}
