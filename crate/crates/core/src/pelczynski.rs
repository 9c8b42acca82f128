//! Isomorphism witnesses between direct-sum expressions and a deterministic
//! search that derives them from axioms.
//!
//! `⊕` is purely syntactic. Associativity and commutativity are explicit
//! witness constructors, so every derived isomorphism is an auditable term
//! that [`check_witness`] re-validates by structural recursion.
//!
//! From `X⊕X ≅ X`, `Y⊕Y ≅ Y`, `X ≅ Y⊕F` and `Y ≅ X⊕E` the search finds
//! a chain `X ≅ Y⊕F ≅ (Y⊕Y)⊕F ≅ Y⊕(Y⊕F) ≅ Y⊕X ≅ … ≅ Y`, the decomposition
//! method.

use alloc::boxed::Box;
use alloc::collections::{BTreeMap, VecDeque};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use thiserror::Error;

/// A direct-sum expression over named spaces.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "serde_repr::ExprRepr", into = "serde_repr::ExprRepr")
)]
pub enum SpaceExpr {
    Atom(String),
    Sum(Box<SpaceExpr>, Box<SpaceExpr>),
}

impl SpaceExpr {
    pub fn atom(name: impl Into<String>) -> Self {
        SpaceExpr::Atom(name.into())
    }

    pub fn sum(left: SpaceExpr, right: SpaceExpr) -> Self {
        SpaceExpr::Sum(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            SpaceExpr::Atom(_) => 1,
            SpaceExpr::Sum(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            SpaceExpr::Atom(_) => 1,
            SpaceExpr::Sum(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Atom names in left-to-right order, with repetition.
    pub fn atoms(&self) -> Vec<&str> {
        let mut out = Vec::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut Vec<&'a str>) {
        match self {
            SpaceExpr::Atom(name) => out.push(name),
            SpaceExpr::Sum(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }
}

impl fmt::Display for SpaceExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceExpr::Atom(name) => f.write_str(name),
            SpaceExpr::Sum(l, r) => write!(f, "({l} ⊕ {r})"),
        }
    }
}

/// A named assumption `lhs ≅ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct IsoAxiom {
    pub name: String,
    pub lhs: SpaceExpr,
    pub rhs: SpaceExpr,
}

impl IsoAxiom {
    pub fn new(name: impl Into<String>, lhs: SpaceExpr, rhs: SpaceExpr) -> Self {
        Self {
            name: name.into(),
            lhs,
            rhs,
        }
    }
}

/// Axioms with unique names, kept in declaration order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(try_from = "Vec<IsoAxiom>", into = "Vec<IsoAxiom>")
)]
pub struct AxiomSet {
    axioms: Vec<IsoAxiom>,
}

impl AxiomSet {
    pub fn new(axioms: Vec<IsoAxiom>) -> Result<Self, WitnessError> {
        for (i, ax) in axioms.iter().enumerate() {
            if ax.name.is_empty() {
                return Err(WitnessError::root(ErrorKind::Malformed("empty axiom name")));
            }
            if axioms[..i].iter().any(|other| other.name == ax.name) {
                return Err(WitnessError::root(ErrorKind::DuplicateAxiom(
                    ax.name.clone(),
                )));
            }
            check_expr(&ax.lhs).and_then(|_| check_expr(&ax.rhs))?;
        }
        Ok(Self { axioms })
    }

    pub fn get(&self, name: &str) -> Option<&IsoAxiom> {
        self.axioms.iter().find(|a| a.name == name)
    }

    pub fn iter(&self) -> core::slice::Iter<'_, IsoAxiom> {
        self.axioms.iter()
    }

    pub fn len(&self) -> usize {
        self.axioms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.axioms.is_empty()
    }

    /// The same set without the named axiom.
    pub fn without(&self, name: &str) -> Self {
        Self {
            axioms: self
                .axioms
                .iter()
                .filter(|a| a.name != name)
                .cloned()
                .collect(),
        }
    }
}

impl TryFrom<Vec<IsoAxiom>> for AxiomSet {
    type Error = WitnessError;

    fn try_from(axioms: Vec<IsoAxiom>) -> Result<Self, WitnessError> {
        Self::new(axioms)
    }
}

impl From<AxiomSet> for Vec<IsoAxiom> {
    fn from(set: AxiomSet) -> Self {
        set.axioms
    }
}

/// A proof term for an isomorphism `source ≅ target`.
#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(
    feature = "serde",
    derive(serde::Serialize, serde::Deserialize),
    serde(tag = "kind", rename_all = "snake_case")
)]
pub enum IsoWitness {
    /// `lhs ≅ rhs` of a named axiom.
    Axiom { name: String },
    /// `e ≅ e`.
    Refl { expr: SpaceExpr },
    /// Reverses a witness.
    Sym { of: Box<IsoWitness> },
    /// `first: a ≅ b`, `second: b ≅ c` give `a ≅ c`.
    Trans {
        first: Box<IsoWitness>,
        second: Box<IsoWitness>,
    },
    /// `a ≅ a'` and `b ≅ b'` give `a⊕b ≅ a'⊕b'`.
    Cong {
        left: Box<IsoWitness>,
        right: Box<IsoWitness>,
    },
    /// `(a⊕b)⊕c ≅ a⊕(b⊕c)`.
    Assoc {
        a: SpaceExpr,
        b: SpaceExpr,
        c: SpaceExpr,
    },
    /// `a⊕(b⊕c) ≅ (a⊕b)⊕c`.
    AssocInv {
        a: SpaceExpr,
        b: SpaceExpr,
        c: SpaceExpr,
    },
    /// `a⊕b ≅ b⊕a`.
    Comm { a: SpaceExpr, b: SpaceExpr },
}

impl IsoWitness {
    pub fn axiom(name: impl Into<String>) -> Self {
        IsoWitness::Axiom { name: name.into() }
    }

    pub fn refl(expr: SpaceExpr) -> Self {
        IsoWitness::Refl { expr }
    }

    pub fn sym(of: IsoWitness) -> Self {
        IsoWitness::Sym { of: Box::new(of) }
    }

    pub fn trans(first: IsoWitness, second: IsoWitness) -> Self {
        IsoWitness::Trans {
            first: Box::new(first),
            second: Box::new(second),
        }
    }

    pub fn cong(left: IsoWitness, right: IsoWitness) -> Self {
        IsoWitness::Cong {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    /// The non-`Trans` steps of the witness, in order along its `Trans` spine.
    pub fn steps(&self) -> Vec<&IsoWitness> {
        let mut out = Vec::new();
        self.collect_steps(&mut out);
        out
    }

    fn collect_steps<'a>(&'a self, out: &mut Vec<&'a IsoWitness>) {
        match self {
            IsoWitness::Trans { first, second } => {
                first.collect_steps(out);
                second.collect_steps(out);
            }
            other => out.push(other),
        }
    }
}

/// Where inside a witness term an error occurred.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathStep {
    SymOf,
    TransFirst,
    TransSecond,
    CongLeft,
    CongRight,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ErrorKind {
    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
    #[error("duplicate axiom name `{0}`")]
    DuplicateAxiom(String),
    #[error("trans mismatch: first ends at {left_target}, second starts at {right_source}")]
    TransMismatch {
        left_target: SpaceExpr,
        right_source: SpaceExpr,
    },
    #[error("malformed term: {0}")]
    Malformed(&'static str),
}

/// A type error together with its location (outermost step first).
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{kind} at {path:?}")]
pub struct WitnessError {
    pub path: Vec<PathStep>,
    pub kind: ErrorKind,
}

impl WitnessError {
    fn root(kind: ErrorKind) -> Self {
        Self {
            path: Vec::new(),
            kind,
        }
    }

    fn within(mut self, step: PathStep) -> Self {
        self.path.insert(0, step);
        self
    }
}

fn check_expr(e: &SpaceExpr) -> Result<(), WitnessError> {
    match e {
        SpaceExpr::Atom(name) if name.is_empty() => {
            Err(WitnessError::root(ErrorKind::Malformed("empty atom name")))
        }
        SpaceExpr::Atom(_) => Ok(()),
        SpaceExpr::Sum(l, r) => check_expr(l).and_then(|_| check_expr(r)),
    }
}

/// Computes the `(source, target)` pair a witness proves, or the first type error.
pub fn check_witness(
    w: &IsoWitness,
    axioms: &AxiomSet,
) -> Result<(SpaceExpr, SpaceExpr), WitnessError> {
    use SpaceExpr as E;
    match w {
        IsoWitness::Axiom { name } => axioms
            .get(name)
            .map(|ax| (ax.lhs.clone(), ax.rhs.clone()))
            .ok_or_else(|| WitnessError::root(ErrorKind::UnknownAxiom(name.clone()))),
        IsoWitness::Refl { expr } => {
            check_expr(expr)?;
            Ok((expr.clone(), expr.clone()))
        }
        IsoWitness::Sym { of } => {
            let (s, t) = check_witness(of, axioms).map_err(|e| e.within(PathStep::SymOf))?;
            Ok((t, s))
        }
        IsoWitness::Trans { first, second } => {
            let (s1, t1) =
                check_witness(first, axioms).map_err(|e| e.within(PathStep::TransFirst))?;
            let (s2, t2) =
                check_witness(second, axioms).map_err(|e| e.within(PathStep::TransSecond))?;
            if t1 != s2 {
                return Err(WitnessError::root(ErrorKind::TransMismatch {
                    left_target: t1,
                    right_source: s2,
                }));
            }
            Ok((s1, t2))
        }
        IsoWitness::Cong { left, right } => {
            let (s1, t1) = check_witness(left, axioms).map_err(|e| e.within(PathStep::CongLeft))?;
            let (s2, t2) =
                check_witness(right, axioms).map_err(|e| e.within(PathStep::CongRight))?;
            Ok((E::sum(s1, s2), E::sum(t1, t2)))
        }
        IsoWitness::Assoc { a, b, c } => {
            for e in [a, b, c] {
                check_expr(e)?;
            }
            Ok((
                E::sum(E::sum(a.clone(), b.clone()), c.clone()),
                E::sum(a.clone(), E::sum(b.clone(), c.clone())),
            ))
        }
        IsoWitness::AssocInv { a, b, c } => {
            for e in [a, b, c] {
                check_expr(e)?;
            }
            Ok((
                E::sum(a.clone(), E::sum(b.clone(), c.clone())),
                E::sum(E::sum(a.clone(), b.clone()), c.clone()),
            ))
        }
        IsoWitness::Comm { a, b } => {
            check_expr(a)?;
            check_expr(b)?;
            Ok((E::sum(a.clone(), b.clone()), E::sum(b.clone(), a.clone())))
        }
    }
}

/// Search limits for [`derive`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeriveOptions {
    /// Maximum number of expressions expanded.
    pub step_budget: usize,
    /// Expressions with more leaves are never visited. `None` uses the
    /// largest goal side plus the largest axiom side.
    pub max_leaves: Option<usize>,
}

impl DeriveOptions {
    pub fn with_budget(step_budget: usize) -> Self {
        Self {
            step_budget,
            max_leaves: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FailureReason {
    /// The budget ran out with unexplored expressions left.
    BudgetExhausted,
    /// Every expression within the leaf bound was visited.
    SearchSpaceExhausted,
    /// `step_budget` was zero.
    ZeroBudget,
}

/// Why [`derive`] returned without a witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeriveFailure {
    pub reason: FailureReason,
    /// Expressions expanded before giving up.
    pub expanded: usize,
    /// Discovered but unexpanded expressions left on the queue.
    pub frontier: usize,
}

impl fmt::Display for DeriveFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let why = match self.reason {
            FailureReason::BudgetExhausted => "step budget exhausted",
            FailureReason::SearchSpaceExhausted => "no derivation within the leaf bound",
            FailureReason::ZeroBudget => "step budget must be positive",
        };
        write!(
            f,
            "{why} after {} expansions (frontier {})",
            self.expanded, self.frontier
        )
    }
}

/// Derives a witness for `goal.0 ≅ goal.1` with the default leaf bound.
pub fn derive(
    axioms: &AxiomSet,
    goal: (&SpaceExpr, &SpaceExpr),
    step_budget: usize,
) -> Result<IsoWitness, DeriveFailure> {
    derive_with(axioms, goal, DeriveOptions::with_budget(step_budget))
}

/// Breadth-first rewriting from the goal's source towards its target.
///
/// Neighbours of an expression are generated in a fixed order: at the root
/// first, each axiom in declaration order left-to-right then right-to-left,
/// then `Assoc`, `AssocInv`, `Comm`; then rewrites inside the left summand,
/// then inside the right summand. A shortest chain is returned; among
/// shortest chains the one found first in that order.
pub fn derive_with(
    axioms: &AxiomSet,
    goal: (&SpaceExpr, &SpaceExpr),
    options: DeriveOptions,
) -> Result<IsoWitness, DeriveFailure> {
    let (source, target) = goal;
    if options.step_budget == 0 {
        return Err(DeriveFailure {
            reason: FailureReason::ZeroBudget,
            expanded: 0,
            frontier: 1,
        });
    }
    let max_leaves = options.max_leaves.unwrap_or_else(|| {
        let widest_axiom = axioms
            .iter()
            .map(|a| a.lhs.leaves().max(a.rhs.leaves()))
            .max()
            .unwrap_or(0);
        source.leaves().max(target.leaves()) + widest_axiom
    });

    // node index -> (expression, parent index, step witness parent ≅ node)
    let mut nodes: Vec<(SpaceExpr, Option<(usize, IsoWitness)>)> = Vec::new();
    let mut seen: BTreeMap<SpaceExpr, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    nodes.push((source.clone(), None));
    seen.insert(source.clone(), 0);
    queue.push_back(0usize);

    let mut expanded = 0;
    while let Some(index) = queue.pop_front() {
        if expanded == options.step_budget {
            return Err(DeriveFailure {
                reason: FailureReason::BudgetExhausted,
                expanded,
                frontier: queue.len() + 1,
            });
        }
        expanded += 1;
        if &nodes[index].0 == target {
            return Ok(assemble(&nodes, index));
        }
        let current = nodes[index].0.clone();
        for (next, step) in rewrites(&current, axioms) {
            if next.leaves() > max_leaves || seen.contains_key(&next) {
                continue;
            }
            seen.insert(next.clone(), nodes.len());
            queue.push_back(nodes.len());
            nodes.push((next, Some((index, step))));
        }
    }
    Err(DeriveFailure {
        reason: FailureReason::SearchSpaceExhausted,
        expanded,
        frontier: 0,
    })
}

fn assemble(nodes: &[(SpaceExpr, Option<(usize, IsoWitness)>)], mut index: usize) -> IsoWitness {
    let mut steps = Vec::new();
    while let Some((parent, step)) = &nodes[index].1 {
        steps.push(step.clone());
        index = *parent;
    }
    // steps are collected target-first; fold into a right-nested Trans chain
    let mut iter = steps.into_iter();
    match iter.next() {
        None => IsoWitness::refl(nodes[index].0.clone()),
        Some(last) => iter.fold(last, |acc, step| IsoWitness::trans(step, acc)),
    }
}

/// All one-step rewrites of `e`, each with a witness `e ≅ e'`.
fn rewrites(e: &SpaceExpr, axioms: &AxiomSet) -> Vec<(SpaceExpr, IsoWitness)> {
    let mut out = Vec::new();
    for ax in axioms.iter() {
        if *e == ax.lhs {
            out.push((ax.rhs.clone(), IsoWitness::axiom(ax.name.clone())));
        }
        if *e == ax.rhs {
            out.push((
                ax.lhs.clone(),
                IsoWitness::sym(IsoWitness::axiom(ax.name.clone())),
            ));
        }
    }
    if let SpaceExpr::Sum(l, r) = e {
        if let SpaceExpr::Sum(a, b) = l.as_ref() {
            let (a, b, c) = ((**a).clone(), (**b).clone(), (**r).clone());
            let to = SpaceExpr::sum(a.clone(), SpaceExpr::sum(b.clone(), c.clone()));
            out.push((to, IsoWitness::Assoc { a, b, c }));
        }
        if let SpaceExpr::Sum(b, c) = r.as_ref() {
            let (a, b, c) = ((**l).clone(), (**b).clone(), (**c).clone());
            let to = SpaceExpr::sum(SpaceExpr::sum(a.clone(), b.clone()), c.clone());
            out.push((to, IsoWitness::AssocInv { a, b, c }));
        }
        out.push((
            SpaceExpr::sum((**r).clone(), (**l).clone()),
            IsoWitness::Comm {
                a: (**l).clone(),
                b: (**r).clone(),
            },
        ));
        for (l2, w) in rewrites(l, axioms) {
            out.push((
                SpaceExpr::sum(l2, (**r).clone()),
                IsoWitness::cong(w, IsoWitness::refl((**r).clone())),
            ));
        }
        for (r2, w) in rewrites(r, axioms) {
            out.push((
                SpaceExpr::sum((**l).clone(), r2),
                IsoWitness::cong(IsoWitness::refl((**l).clone()), w),
            ));
        }
    }
    out
}

/// The textbook instance: `X⊕X ≅ X`, `Y⊕Y ≅ Y`, `X ≅ Y⊕F`, `Y ≅ X⊕E`.
pub fn decomposition_axioms() -> AxiomSet {
    let at = SpaceExpr::atom;
    AxiomSet::new(alloc::vec![
        IsoAxiom::new("cX", SpaceExpr::sum(at("X"), at("X")), at("X")),
        IsoAxiom::new("cY", SpaceExpr::sum(at("Y"), at("Y")), at("Y")),
        IsoAxiom::new("u", at("X"), SpaceExpr::sum(at("Y"), at("F"))),
        IsoAxiom::new("v", at("Y"), SpaceExpr::sum(at("X"), at("E"))),
    ])
    .expect("names are distinct")
}

pub const Z_ALPHA: &str = "Z_alpha";
pub const Z_CONJ: &str = "Z_-alpha";

/// Axioms encoding the self-conjugacy assumption for `𝔠_α`: both `Z_α` and
/// its conjugate `Z_{−α}` are Cartesian, and each is complemented in the
/// other (`B ≅ A⊕E` encodes "A is complemented in B").
pub fn conjugacy_axioms() -> AxiomSet {
    let at = SpaceExpr::atom;
    AxiomSet::new(alloc::vec![
        IsoAxiom::new(
            "cart_pos",
            SpaceExpr::sum(at(Z_ALPHA), at(Z_ALPHA)),
            at(Z_ALPHA)
        ),
        IsoAxiom::new(
            "cart_neg",
            SpaceExpr::sum(at(Z_CONJ), at(Z_CONJ)),
            at(Z_CONJ)
        ),
        IsoAxiom::new(
            "comp_pos_in_neg",
            at(Z_CONJ),
            SpaceExpr::sum(at(Z_ALPHA), at("E"))
        ),
        IsoAxiom::new(
            "comp_neg_in_pos",
            at(Z_ALPHA),
            SpaceExpr::sum(at(Z_CONJ), at("F"))
        ),
    ])
    .expect("names are distinct")
}

/// The imported fact the derived isomorphism runs into.
pub const IMPORTED_FACT: &str =
    "Z_alpha is isomorphic to Z_beta only if alpha = beta (taken from the construction of Z_alpha, not verified here)";

/// Outcome of deriving `Z_α ≅ Z_{−α}` from the self-conjugacy assumption.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContradictionTrace {
    pub witness: IsoWitness,
    /// `Z_α = e₀ ≅ e₁ ≅ … ≅ e_k = Z_{−α}`, one expression per step boundary.
    pub chain: Vec<SpaceExpr>,
    /// The fact the conclusion contradicts for `α ≠ 0`. Reported, not proved.
    pub contradicts: &'static str,
}

/// Derives `Z_α ≅ Z_{−α}` from `axioms` and records the resulting chain.
pub fn self_conjugacy_contradiction(
    axioms: &AxiomSet,
    step_budget: usize,
) -> Result<ContradictionTrace, DeriveFailure> {
    let source = SpaceExpr::atom(Z_ALPHA);
    let target = SpaceExpr::atom(Z_CONJ);
    let witness = derive(axioms, (&source, &target), step_budget)?;
    let mut chain = alloc::vec![source];
    for step in witness.steps() {
        let (_, t) = check_witness(step, axioms).expect("derived steps type-check");
        chain.push(t);
    }
    Ok(ContradictionTrace {
        witness,
        chain,
        contradicts: IMPORTED_FACT,
    })
}

#[cfg(feature = "serde")]
mod serde_repr {
    use super::SpaceExpr;
    use alloc::boxed::Box;
    use alloc::string::String;

    /// `["atom", name]` or `["sum", left, right]`.
    #[derive(serde::Serialize, serde::Deserialize)]
    #[serde(untagged)]
    pub(super) enum ExprRepr {
        Atom(String, String),
        Sum(String, Box<SpaceExpr>, Box<SpaceExpr>),
    }

    impl TryFrom<ExprRepr> for SpaceExpr {
        type Error = String;

        fn try_from(repr: ExprRepr) -> Result<Self, String> {
            match repr {
                ExprRepr::Atom(tag, name) if tag == "atom" && !name.is_empty() => {
                    Ok(SpaceExpr::Atom(name))
                }
                ExprRepr::Sum(tag, l, r) if tag == "sum" => Ok(SpaceExpr::Sum(l, r)),
                ExprRepr::Atom(tag, _) | ExprRepr::Sum(tag, _, _) => {
                    Err(alloc::format!("malformed expression node tagged `{tag}`"))
                }
            }
        }
    }

    impl From<SpaceExpr> for ExprRepr {
        fn from(e: SpaceExpr) -> Self {
            match e {
                SpaceExpr::Atom(name) => ExprRepr::Atom("atom".into(), name),
                SpaceExpr::Sum(l, r) => ExprRepr::Sum("sum".into(), l, r),
            }
        }
    }
}
