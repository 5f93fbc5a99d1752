use serde::{Deserialize, Serialize};

use crate::field::Gf2k;
use crate::linalg::{FVec, Subspace};
use crate::quad::QuadSpace;
use crate::SelmerError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Flavor {
    /// `L = L^⊥` for the bilinear form.
    BilinearSelfDual,
    /// Self-dual and `Q|_L = 0`.
    QIsotropicLagrangian,
}

/// Which global axiom `G` satisfies besides having half the total dimension.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GlobalAxiom {
    /// `G` is totally isotropic for the sum quadratic form.
    #[default]
    Quadratic,
    /// `G` is only totally isotropic for the sum bilinear form.
    Bilinear,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Place {
    pub label: String,
    pub space: QuadSpace,
    pub condition: Subspace,
    pub flavor: Flavor,
    pub metadata: Option<serde_json::Value>,
}

impl Place {
    /// Tags the condition with the strongest flavor it satisfies.
    pub fn new(label: impl Into<String>, space: QuadSpace, condition: Subspace) -> Place {
        let flavor = if space.is_q_isotropic(&condition) { Flavor::QIsotropicLagrangian } else { Flavor::BilinearSelfDual };
        Place { label: label.into(), space, condition, flavor, metadata: None }
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    fn validate(&self, field: Gf2k) -> Result<(), SelmerError> {
        let bad = |m: String| Err(SelmerError::Malformed(format!("place {}: {m}", self.label)));
        if self.space.field != field || self.condition.field != field {
            return bad("field mismatch".into());
        }
        if self.condition.ambient != self.space.dim() {
            return bad("condition lives in the wrong space".into());
        }
        if !self.space.is_self_dual(&self.condition) {
            return bad("condition is not self-dual".into());
        }
        if self.flavor == Flavor::QIsotropicLagrangian && !self.space.is_q_isotropic(&self.condition) {
            return bad("condition tagged Q-isotropic but Q does not vanish on it".into());
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StepMode {
    Bilinear,
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Want {
    Lower,
    Raise,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepOutcome {
    pub place: String,
    pub mode: StepMode,
    pub old_dim: usize,
    pub new_dim: usize,
    pub residue_was_zero: bool,
}

impl StepOutcome {
    pub fn delta(&self) -> i64 {
        self.new_dim as i64 - self.old_dim as i64
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepPlace {
    pub index: usize,
    pub label: String,
    pub alternative: Subspace,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SelmerSystem {
    pub field: Gf2k,
    pub axiom: GlobalAxiom,
    places: Vec<Place>,
    global: Subspace,
    offsets: Vec<usize>,
    ambient: QuadSpace,
}

impl SelmerSystem {
    pub fn new(field: Gf2k, places: Vec<Place>, global: Subspace, axiom: GlobalAxiom) -> Result<Self, SelmerError> {
        for p in &places {
            p.validate(field)?;
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(p) = places.iter().find(|p| !seen.insert(p.label.as_str())) {
            return Err(SelmerError::Malformed(format!("duplicate place label {}", p.label)));
        }
        let mut ambient = QuadSpace::hyperbolic(field, 0);
        let mut offsets = Vec::with_capacity(places.len());
        for p in &places {
            offsets.push(ambient.dim());
            if ambient.dim() + p.dim() > crate::linalg::MAX_DIM {
                return Err(SelmerError::Malformed("total dimension exceeds 64".into()));
            }
            ambient = ambient.orthogonal_sum(&p.space);
        }
        if global.field != field || global.ambient != ambient.dim() {
            return Err(SelmerError::Malformed("global image lives in the wrong space".into()));
        }
        if 2 * global.dim() != ambient.dim() {
            return Err(SelmerError::Malformed(format!(
                "dim G = {} but the places have total dimension {}",
                global.dim(),
                ambient.dim()
            )));
        }
        let isotropic = match axiom {
            GlobalAxiom::Quadratic => ambient.is_q_isotropic(&global),
            GlobalAxiom::Bilinear => ambient.is_b_isotropic(&global),
        };
        if !isotropic {
            return Err(SelmerError::Malformed(format!("G is not totally isotropic ({axiom:?} axiom)")));
        }
        Ok(SelmerSystem { field, axiom, places, global, offsets, ambient })
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn global(&self) -> &Subspace {
        &self.global
    }

    pub fn ambient(&self) -> &QuadSpace {
        &self.ambient
    }

    pub fn total_dim(&self) -> usize {
        self.ambient.dim()
    }

    pub fn offset(&self, index: usize) -> usize {
        self.offsets[index]
    }

    pub fn place_index(&self, label: &str) -> Result<usize, SelmerError> {
        self.places.iter().position(|p| p.label == label).ok_or_else(|| SelmerError::UnknownPlace(label.into()))
    }

    /// `⊕ L_v`, with the condition at `w` replaced by `at_w` when given.
    fn conditions_with(&self, w: Option<(usize, &Subspace)>) -> Subspace {
        let n = self.total_dim();
        let mut out = Subspace::zero(self.field, n);
        for (i, p) in self.places.iter().enumerate() {
            let local = match w {
                Some((j, l)) if j == i => l,
                _ => &p.condition,
            };
            for v in local.basis() {
                out.insert(v.shift(self.offsets[i]));
            }
        }
        out
    }

    pub fn selmer_group(&self) -> Subspace {
        self.global.intersect(&self.conditions_with(None))
    }

    pub fn selmer_dim(&self) -> usize {
        self.selmer_group().dim()
    }

    /// Image of the Selmer group in `H_w`.
    pub fn residue(&self, w: usize) -> Subspace {
        self.selmer_group().project(self.offsets[w], self.places[w].dim())
    }

    /// `dim H¹_R − dim H¹_S` for the relaxed and strict conditions at `w`.
    pub fn greenberg_wiles_delta(&self, w: usize) -> Result<i64, SelmerError> {
        let place = self.places.get(w).ok_or_else(|| SelmerError::UnknownPlace(format!("#{w}")))?;
        for (i, p) in self.places.iter().enumerate() {
            if i != w && !p.space.is_self_dual(&p.condition) {
                return Err(SelmerError::Precondition(format!("condition at {} is not self-dual", p.label)));
            }
        }
        let relaxed = self.conditions_with(Some((w, &Subspace::full(self.field, place.dim()))));
        let strict = self.conditions_with(Some((w, &Subspace::zero(self.field, place.dim()))));
        Ok(self.global.intersect(&relaxed).dim() as i64 - self.global.intersect(&strict).dim() as i64)
    }

    /// Replaces the condition at `w`.
    pub fn with_condition(&self, w: usize, condition: Subspace) -> Result<SelmerSystem, SelmerError> {
        let mut places = self.places.clone();
        let p = &mut places[w];
        *p = Place { metadata: p.metadata.clone(), ..Place::new(p.label.clone(), p.space.clone(), condition) };
        SelmerSystem::new(self.field, places, self.global.clone(), self.axiom)
    }

    /// Swaps `L_w` for `new_line` and checks the predicted change in dimension.
    ///
    /// Bilinear mode needs a nonzero residue at `w` and asserts a drop of one.
    /// Quadratic mode asserts the dichotomy: the dimension drops by one exactly
    /// when the residue is nonzero, and rises by one otherwise.
    pub fn apply_step(&self, w: usize, new_line: &Subspace, mode: StepMode) -> Result<(SelmerSystem, StepOutcome), SelmerError> {
        let place = self.places.get(w).ok_or_else(|| SelmerError::UnknownPlace(format!("#{w}")))?;
        let pre = |m: String| Err(SelmerError::Precondition(format!("{}: {m}", place.label)));
        if place.dim() != 2 {
            return pre(format!("local space has dimension {}, not 2", place.dim()));
        }
        if new_line.dim() != 1 || new_line.ambient != 2 {
            return pre("replacement is not a line in the local space".into());
        }
        if *new_line == place.condition {
            return pre("replacement line equals the current condition".into());
        }
        if mode == StepMode::Quadratic {
            if self.axiom != GlobalAxiom::Quadratic {
                return pre("quadratic mode needs Q to vanish on G".into());
            }
            if !place.space.is_q_isotropic(&place.condition) || !place.space.is_q_isotropic(new_line) {
                return pre("both lines must be Q-isotropic".into());
            }
            if let Some(p) = self.places.iter().enumerate().find(|(i, p)| *i != w && p.flavor != Flavor::QIsotropicLagrangian) {
                return pre(format!("condition at {} is not a Q-isotropic Lagrangian", p.1.label));
            }
        }
        let old_dim = self.selmer_dim();
        let residue_was_zero = self.residue(w).dim() == 0;
        if mode == StepMode::Bilinear && residue_was_zero {
            return Err(SelmerError::StepInapplicable(format!(
                "residue at {} is zero; the bilinear step only predicts a drop for a nonzero residue",
                place.label
            )));
        }
        let next = self.with_condition(w, new_line.clone())?;
        let new_dim = next.selmer_dim();
        let expected = if residue_was_zero { old_dim + 1 } else { old_dim.wrapping_sub(1) };
        if new_dim != expected {
            return Err(SelmerError::ConclusionViolated(format!(
                "{mode:?} step at {}: dim {old_dim} -> {new_dim}, residue zero = {residue_was_zero}",
                place.label
            )));
        }
        let outcome = StepOutcome { place: place.label.clone(), mode, old_dim, new_dim, residue_was_zero };
        Ok((next, outcome))
    }

    /// A 2-dimensional place whose residue matches `want`, with a second
    /// Q-isotropic line to switch to.
    pub fn find_step_place(&self, want: Want) -> Option<StepPlace> {
        let sel = self.selmer_group();
        if want == Want::Lower && sel.dim() == 0 {
            return None;
        }
        self.places.iter().enumerate().find_map(|(i, p)| {
            if p.dim() != 2 || !p.space.is_q_isotropic(&p.condition) {
                return None;
            }
            let zero = sel.project(self.offsets[i], 2).dim() == 0;
            if zero != (want == Want::Raise) {
                return None;
            }
            let alternative = p.space.q_isotropic_lines().into_iter().find(|l| *l != p.condition)?;
            Some(StepPlace { index: i, label: p.label.clone(), alternative })
        })
    }

    /// Appends a hyperbolic plane `⟨e1, e2⟩` with condition `⟨e1⟩` and global
    /// image `{(g, B(g,u)·e1)} + ⟨(u, e2)⟩`, which is again maximal isotropic
    /// when `Q(u) = 0`. The residue of the Selmer group at the new place is
    /// `B(Sel, u)·e1`.
    pub fn extend_hyperbolic(&self, label: impl Into<String>, u: &FVec) -> Result<SelmerSystem, SelmerError> {
        let label = label.into();
        if self.axiom == GlobalAxiom::Quadratic && self.ambient.q(u) != 0 {
            return Err(SelmerError::Precondition("extension vector must satisfy Q(u) = 0".into()));
        }
        let n = self.total_dim();
        let f = self.field;
        let plane = QuadSpace::hyperbolic(f, 1);
        let condition = Subspace::span(f, 2, [FVec::unit(0)]);
        let mut global = Subspace::zero(f, n + 2);
        for g in self.global.basis() {
            let mut v = *g;
            v.set(n, self.ambient.b(g, u));
            global.insert(v);
        }
        let mut top = *u;
        top.set(n + 1, 1);
        global.insert(top);
        let mut places = self.places.clone();
        places.push(Place::new(label, plane, condition));
        SelmerSystem::new(f, places, global, self.axiom)
    }
}
