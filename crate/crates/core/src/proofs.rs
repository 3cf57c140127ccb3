//! Hilbert-style proofs for the logic of distributed knowledge `K` and
//! clandestine power `H`.
//!
//! A proof is a list of hypotheses and a list of justified lines. Every line
//! records whether it depends on a hypothesis; the Necessitation rules only
//! apply to lines that do not, so hypotheses combine with theorems through
//! Modus Ponens alone.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{modal_atoms, Coalition, Formula};

/// Truth-table bound for [`is_tautology`].
pub const MAX_TAUTOLOGY_ATOMS: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomName {
    Truth,
    NegIntrospection,
    Distributivity,
    Monotonicity,
    StrategicIntrospection,
    Cia,
    Nontermination,
    EmptyCoalition,
}

impl AxiomName {
    pub const ALL: [AxiomName; 8] = [
        AxiomName::Truth,
        AxiomName::NegIntrospection,
        AxiomName::Distributivity,
        AxiomName::Monotonicity,
        AxiomName::StrategicIntrospection,
        AxiomName::Cia,
        AxiomName::Nontermination,
        AxiomName::EmptyCoalition,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            AxiomName::Truth => "truth",
            AxiomName::NegIntrospection => "neg-introspection",
            AxiomName::Distributivity => "distributivity",
            AxiomName::Monotonicity => "monotonicity",
            AxiomName::StrategicIntrospection => "strategic-introspection",
            AxiomName::Cia => "cia",
            AxiomName::Nontermination => "nontermination",
            AxiomName::EmptyCoalition => "empty-coalition",
        }
    }

    /// Formula and coalition metavariables of the schema.
    pub fn metavariables(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            AxiomName::Truth | AxiomName::NegIntrospection | AxiomName::StrategicIntrospection => {
                (&["phi"], &["C"])
            }
            AxiomName::Distributivity => (&["phi", "psi"], &["C"]),
            AxiomName::Monotonicity => (&["phi"], &["C", "C'"]),
            AxiomName::Cia => (&["phi", "psi"], &["A", "C", "I"]),
            AxiomName::Nontermination => (&[], &["C"]),
            AxiomName::EmptyCoalition => (&["phi"], &[]),
        }
    }
}

impl fmt::Display for AxiomName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

impl FromStr for AxiomName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        AxiomName::ALL
            .into_iter()
            .find(|a| a.as_str() == s)
            .ok_or_else(|| format!("unknown axiom `{s}`"))
    }
}

/// Instantiation of a schema: formulas for `phi`/`psi`, coalitions for `C`, `C'`, `I`, `A`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Binding {
    #[serde(default)]
    pub formulas: BTreeMap<String, Formula>,
    #[serde(default)]
    pub coalitions: BTreeMap<String, Coalition>,
}

impl Binding {
    pub fn new() -> Self {
        Binding::default()
    }

    pub fn formula(mut self, name: &str, f: Formula) -> Self {
        self.formulas.insert(name.to_string(), f);
        self
    }

    pub fn coalition(mut self, name: &str, c: Coalition) -> Self {
        self.coalitions.insert(name.to_string(), c);
        self
    }
}

impl fmt::Display for Binding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, v) in &self.coalitions {
            write!(f, "{}{k} = {v}", if first { "" } else { ", " })?;
            first = false;
        }
        for (k, v) in &self.formulas {
            write!(f, "{}{k} = {v}", if first { "" } else { ", " })?;
            first = false;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("binding for `{axiom}` lacks metavariable `{name}`")]
    Missing { axiom: AxiomName, name: String },
    #[error("binding for `{axiom}` has unexpected metavariable `{name}`")]
    Unexpected { axiom: AxiomName, name: String },
    #[error("side condition of `{axiom}` fails: {condition}")]
    SideCondition { axiom: AxiomName, condition: String },
}

/// The instance of schema `name` under binding `b`, side conditions enforced.
pub fn instantiate_axiom(name: AxiomName, b: &Binding) -> Result<Formula, SchemaError> {
    let (formulas, coalitions) = name.metavariables();
    for (bound, expected) in [
        (b.formulas.keys().collect::<Vec<_>>(), formulas),
        (b.coalitions.keys().collect::<Vec<_>>(), coalitions),
    ] {
        if let Some(extra) = bound.iter().find(|k| !expected.contains(&k.as_str())) {
            return Err(SchemaError::Unexpected {
                axiom: name,
                name: extra.to_string(),
            });
        }
        if let Some(missing) = expected.iter().find(|k| !bound.iter().any(|b| b == *k)) {
            return Err(SchemaError::Missing {
                axiom: name,
                name: missing.to_string(),
            });
        }
    }
    let phi = || b.formulas["phi"].clone();
    let psi = || b.formulas["psi"].clone();
    let c = |k: &str| b.coalitions[k].clone();
    use Formula as F;
    Ok(match name {
        AxiomName::Truth => F::imp(F::know(c("C"), phi()), phi()),
        AxiomName::NegIntrospection => {
            let nk = F::neg(F::know(c("C"), phi()));
            F::imp(nk.clone(), F::know(c("C"), nk))
        }
        AxiomName::Distributivity => F::imp(
            F::know(c("C"), F::imp(phi(), psi())),
            F::imp(F::know(c("C"), phi()), F::know(c("C"), psi())),
        ),
        AxiomName::Monotonicity => {
            if !c("C'").is_subset(&c("C")) {
                return Err(SchemaError::SideCondition {
                    axiom: name,
                    condition: format!("C' = {} is not a subset of C = {}", c("C'"), c("C")),
                });
            }
            F::imp(F::know(c("C'"), phi()), F::know(c("C"), phi()))
        }
        AxiomName::StrategicIntrospection => {
            let h = F::can(c("C"), phi());
            F::imp(h.clone(), F::know(c("C"), h))
        }
        AxiomName::Cia => {
            let (cc, i, a) = (c("C"), c("I"), c("A"));
            if !cc.is_disjoint(&i.union(&a)) {
                return Err(SchemaError::SideCondition {
                    axiom: name,
                    condition: format!("C = {cc} meets I ∪ A = {}", i.union(&a)),
                });
            }
            let ci = cc.union(&i);
            let ai = a.union(&i);
            F::imp(
                F::know(
                    ci.clone(),
                    F::know(ai, F::imp(F::know(cc.clone(), phi()), F::know(ci.clone(), psi()))),
                ),
                F::imp(F::can(cc, phi()), F::can(ci, psi())),
            )
        }
        AxiomName::Nontermination => F::neg(F::can(c("C"), F::bottom())),
        AxiomName::EmptyCoalition => F::neg(F::can(Coalition::empty(), phi())),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{atoms} modal atoms exceed the truth-table limit of {MAX_TAUTOLOGY_ATOMS}")]
pub struct AtomLimitError {
    pub atoms: usize,
}

enum Prop {
    Atom(usize),
    Neg(Box<Prop>),
    Imp(Box<Prop>, Box<Prop>),
}

impl Prop {
    fn compile(f: &Formula, atoms: &[Formula]) -> Prop {
        match f {
            Formula::Neg(b) => Prop::Neg(Box::new(Prop::compile(b, atoms))),
            Formula::Imp(l, r) => Prop::Imp(Box::new(Prop::compile(l, atoms)), Box::new(Prop::compile(r, atoms))),
            atom => Prop::Atom(atoms.iter().position(|a| a == atom).expect("atom collected")),
        }
    }

    fn eval(&self, assignment: u32) -> bool {
        match self {
            Prop::Atom(i) => assignment & (1 << i) != 0,
            Prop::Neg(b) => !b.eval(assignment),
            Prop::Imp(l, r) => !l.eval(assignment) || r.eval(assignment),
        }
    }
}

/// Truth-table check treating `K`/`H` subformulas and variables as opaque atoms.
pub fn is_tautology(f: &Formula) -> Result<bool, AtomLimitError> {
    let atoms = modal_atoms(f);
    if atoms.len() > MAX_TAUTOLOGY_ATOMS {
        return Err(AtomLimitError { atoms: atoms.len() });
    }
    let prop = Prop::compile(f, &atoms);
    Ok((0..(1u32 << atoms.len())).all(|a| prop.eval(a)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    /// 1-based index into the hypotheses.
    Hyp(usize),
    Taut,
    Axiom { name: AxiomName, binding: Binding },
    /// Line `.1` must be the implication from line `.0` to this line.
    Mp(usize, usize),
    NecK(usize, Coalition),
    NecH(usize, Coalition),
}

impl Justification {
    /// Earlier lines this one cites.
    pub fn premises(&self) -> Vec<usize> {
        match self {
            Justification::Mp(i, j) => vec![*i, *j],
            Justification::NecK(i, _) | Justification::NecH(i, _) => vec![*i],
            _ => Vec::new(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawLine", into = "RawLine")]
pub struct ProofLine {
    pub formula: Formula,
    pub justification: Justification,
}

impl ProofLine {
    pub fn new(formula: Formula, justification: Justification) -> Self {
        ProofLine { formula, justification }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAxiom {
    name: AxiomName,
    #[serde(default)]
    formulas: BTreeMap<String, Formula>,
    #[serde(default)]
    coalitions: BTreeMap<String, Coalition>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawLine {
    formula: Formula,
    rule: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hyp_index: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    axiom: Option<RawAxiom>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    from: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    coalition: Option<Coalition>,
}

impl TryFrom<RawLine> for ProofLine {
    type Error = String;

    fn try_from(raw: RawLine) -> Result<Self, Self::Error> {
        let rule = raw.rule.as_str();
        let field = |present: bool, name: &str| -> Result<(), String> {
            let wanted = match name {
                "hyp_index" => rule == "hyp",
                "axiom" => rule == "axiom",
                "from" => matches!(rule, "mp" | "neck" | "nech"),
                "coalition" => matches!(rule, "neck" | "nech"),
                _ => unreachable!(),
            };
            match (present, wanted) {
                (false, true) => Err(format!("rule `{rule}` requires field `{name}`")),
                (true, false) => Err(format!("rule `{rule}` does not take field `{name}`")),
                _ => Ok(()),
            }
        };
        field(raw.hyp_index.is_some(), "hyp_index")?;
        field(raw.axiom.is_some(), "axiom")?;
        field(raw.from.is_some(), "from")?;
        field(raw.coalition.is_some(), "coalition")?;
        let from = raw.from.unwrap_or_default();
        let arity = |n: usize| {
            if from.len() == n {
                Ok(())
            } else {
                Err(format!("rule `{rule}` takes {n} line indices in `from`"))
            }
        };
        let justification = match rule {
            "hyp" => Justification::Hyp(raw.hyp_index.unwrap()),
            "taut" => Justification::Taut,
            "axiom" => {
                let ax = raw.axiom.unwrap();
                Justification::Axiom {
                    name: ax.name,
                    binding: Binding {
                        formulas: ax.formulas,
                        coalitions: ax.coalitions,
                    },
                }
            }
            "mp" => {
                arity(2)?;
                Justification::Mp(from[0], from[1])
            }
            "neck" => {
                arity(1)?;
                Justification::NecK(from[0], raw.coalition.unwrap())
            }
            "nech" => {
                arity(1)?;
                Justification::NecH(from[0], raw.coalition.unwrap())
            }
            other => return Err(format!("unknown rule `{other}`")),
        };
        Ok(ProofLine {
            formula: raw.formula,
            justification,
        })
    }
}

impl From<ProofLine> for RawLine {
    fn from(line: ProofLine) -> Self {
        let mut raw = RawLine {
            formula: line.formula,
            rule: String::new(),
            hyp_index: None,
            axiom: None,
            from: None,
            coalition: None,
        };
        raw.rule = match line.justification {
            Justification::Hyp(k) => {
                raw.hyp_index = Some(k);
                "hyp"
            }
            Justification::Taut => "taut",
            Justification::Axiom { name, binding } => {
                raw.axiom = Some(RawAxiom {
                    name,
                    formulas: binding.formulas,
                    coalitions: binding.coalitions,
                });
                "axiom"
            }
            Justification::Mp(i, j) => {
                raw.from = Some(vec![i, j]);
                "mp"
            }
            Justification::NecK(i, c) => {
                raw.from = Some(vec![i]);
                raw.coalition = Some(c);
                "neck"
            }
            Justification::NecH(i, c) => {
                raw.from = Some(vec![i]);
                raw.coalition = Some(c);
                "nech"
            }
        }
        .to_string();
        raw
    }
}

/// The JSON proof file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Proof {
    #[serde(default)]
    pub hypotheses: Vec<Formula>,
    pub lines: Vec<ProofLine>,
}

impl Proof {
    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("proof serializes")
    }

    pub fn conclusion(&self) -> Option<&Formula> {
        self.lines.last().map(|l| &l.formula)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LineError {
    #[error("proof has no lines")]
    Empty,
    #[error("reference to line {0}, which does not precede this line")]
    BadLineReference(usize),
    #[error("hypothesis {0} does not exist")]
    BadHypothesisReference(usize),
    #[error("formula differs from hypothesis {0}")]
    HypothesisMismatch(usize),
    #[error("formula is not a propositional tautology")]
    NotTautology,
    #[error(transparent)]
    AtomLimit(#[from] AtomLimitError),
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error("formula differs from the axiom instance {0}")]
    AxiomMismatch(Formula),
    #[error("line {major} is not the implication from line {minor} to this formula")]
    ModusPonensMismatch { minor: usize, major: usize },
    #[error("formula is not {0}")]
    NecessitationMismatch(Formula),
    #[error("necessitation applied to line {0}, which depends on a hypothesis")]
    ImpureNecessitation(usize),
    #[error("H-necessitation requires a nonempty coalition")]
    EmptyCoalitionNecessitation,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {error}")]
pub struct ProofFailure {
    /// 1-based; 0 when the proof is empty.
    pub line: usize,
    pub error: LineError,
}

/// Outcome of a successful check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckedProof {
    /// Per line: derived without any hypothesis.
    pub pure: Vec<bool>,
}

impl CheckedProof {
    /// A proof whose last line is pure is a theorem.
    pub fn is_theorem(&self) -> bool {
        self.pure.last().copied().unwrap_or(false)
    }
}

fn check_line(p: &Proof, k: usize, pure: &[bool]) -> Result<bool, LineError> {
    let line = &p.lines[k - 1];
    let f = &line.formula;
    let earlier = |i: usize| -> Result<&Formula, LineError> {
        if i >= 1 && i < k {
            Ok(&p.lines[i - 1].formula)
        } else {
            Err(LineError::BadLineReference(i))
        }
    };
    match &line.justification {
        Justification::Hyp(h) => {
            let hyp = h
                .checked_sub(1)
                .and_then(|i| p.hypotheses.get(i))
                .ok_or(LineError::BadHypothesisReference(*h))?;
            if hyp != f {
                return Err(LineError::HypothesisMismatch(*h));
            }
            Ok(false)
        }
        Justification::Taut => {
            if !is_tautology(f)? {
                return Err(LineError::NotTautology);
            }
            Ok(true)
        }
        Justification::Axiom { name, binding } => {
            let instance = instantiate_axiom(*name, binding)?;
            if &instance != f {
                return Err(LineError::AxiomMismatch(instance));
            }
            Ok(true)
        }
        Justification::Mp(i, j) => {
            let minor = earlier(*i)?;
            let major = earlier(*j)?;
            match major {
                Formula::Imp(l, r) if l.as_ref() == minor && r.as_ref() == f => Ok(pure[*i - 1] && pure[*j - 1]),
                _ => Err(LineError::ModusPonensMismatch { minor: *i, major: *j }),
            }
        }
        Justification::NecK(i, c) | Justification::NecH(i, c) => {
            let body = earlier(*i)?.clone();
            let is_h = matches!(line.justification, Justification::NecH(..));
            let expected = if is_h {
                Formula::can(c.clone(), body)
            } else {
                Formula::know(c.clone(), body)
            };
            if &expected != f {
                return Err(LineError::NecessitationMismatch(expected));
            }
            if is_h && c.is_empty() {
                return Err(LineError::EmptyCoalitionNecessitation);
            }
            if !pure[*i - 1] {
                return Err(LineError::ImpureNecessitation(*i));
            }
            Ok(true)
        }
    }
}

/// Checks every line; reports the first failing one.
pub fn check_proof(p: &Proof) -> Result<CheckedProof, ProofFailure> {
    if p.lines.is_empty() {
        return Err(ProofFailure {
            line: 0,
            error: LineError::Empty,
        });
    }
    let mut pure = Vec::with_capacity(p.lines.len());
    for k in 1..=p.lines.len() {
        let is_pure = check_line(p, k, &pure).map_err(|error| ProofFailure { line: k, error })?;
        pure.push(is_pure);
    }
    Ok(CheckedProof { pure })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransformError {
    #[error("input proof does not check: {0}")]
    Invalid(#[from] ProofFailure),
    #[error("`{0}` is not a hypothesis of the proof")]
    NotAHypothesis(Formula),
    #[error("line {0} applies necessitation to a hypothesis-dependent line")]
    ImpureNecessitation(usize),
    #[error("transformed proof does not check: {0}")]
    Output(ProofFailure),
}

struct Builder {
    lines: Vec<ProofLine>,
}

impl Builder {
    fn push(&mut self, formula: Formula, justification: Justification) -> usize {
        self.lines.push(ProofLine::new(formula, justification));
        self.lines.len()
    }

    fn formula(&self, k: usize) -> &Formula {
        &self.lines[k - 1].formula
    }
}

/// Turns a proof from hypotheses `X ∪ {phi}` into a proof of `phi -> conclusion` from `X`.
///
/// Every occurrence of `phi` among the hypotheses is discharged.
pub fn deduction_transform(p: &Proof, phi: &Formula) -> Result<Proof, TransformError> {
    let checked = check_proof(p)?;
    if !p.hypotheses.contains(phi) {
        return Err(TransformError::NotAHypothesis(phi.clone()));
    }
    let mut hypotheses = Vec::new();
    let mut hyp_map = vec![None; p.hypotheses.len()];
    for (i, h) in p.hypotheses.iter().enumerate() {
        if h != phi {
            hypotheses.push(h.clone());
            hyp_map[i] = Some(hypotheses.len());
        }
    }

    let mut out = Builder { lines: Vec::new() };
    // copy[k]: new index of line k's own formula; imp[k]: new index of phi -> line k
    let mut copy: Vec<Option<usize>> = vec![None; p.lines.len() + 1];
    let mut imp: Vec<usize> = vec![0; p.lines.len() + 1];
    let weaken = |out: &mut Builder, at: usize| -> usize {
        let psi = out.formula(at).clone();
        let taut = out.push(
            Formula::imp(psi.clone(), Formula::imp(phi.clone(), psi.clone())),
            Justification::Taut,
        );
        out.push(Formula::imp(phi.clone(), psi), Justification::Mp(at, taut))
    };

    for (idx, line) in p.lines.iter().enumerate() {
        let k = idx + 1;
        let psi = &line.formula;
        if checked.pure[idx] {
            // theorem line: copy it, then weaken to phi -> psi
            let remap = |i: &usize| copy[*i].expect("premises of pure lines are pure");
            let justification = match &line.justification {
                Justification::Mp(i, j) => Justification::Mp(remap(i), remap(j)),
                Justification::NecK(i, c) => Justification::NecK(remap(i), c.clone()),
                Justification::NecH(i, c) => Justification::NecH(remap(i), c.clone()),
                j => j.clone(),
            };
            let at = out.push(psi.clone(), justification);
            copy[k] = Some(at);
            imp[k] = weaken(&mut out, at);
            continue;
        }
        match &line.justification {
            Justification::Hyp(h) => match hyp_map[h - 1] {
                Some(new_h) => {
                    let at = out.push(psi.clone(), Justification::Hyp(new_h));
                    imp[k] = weaken(&mut out, at);
                }
                None => {
                    imp[k] = out.push(Formula::imp(phi.clone(), phi.clone()), Justification::Taut);
                }
            },
            Justification::Mp(i, j) => {
                let (a, b) = (imp[*i], imp[*j]);
                let psi_i = p.lines[i - 1].formula.clone();
                let phi_psi = Formula::imp(phi.clone(), psi.clone());
                let tail = Formula::imp(out.formula(b).clone(), phi_psi.clone());
                let taut = out.push(
                    Formula::imp(Formula::imp(phi.clone(), psi_i), tail.clone()),
                    Justification::Taut,
                );
                let m = out.push(tail, Justification::Mp(a, taut));
                imp[k] = out.push(phi_psi, Justification::Mp(b, m));
            }
            Justification::NecK(..) | Justification::NecH(..) => {
                return Err(TransformError::ImpureNecessitation(k));
            }
            Justification::Taut | Justification::Axiom { .. } => unreachable!("always pure"),
        }
    }

    let proof = Proof {
        hypotheses,
        lines: out.lines,
    };
    check_proof(&proof).map_err(TransformError::Output)?;
    Ok(proof)
}

/// From a proof of `psi` from `phi_1..phi_n`, a proof of `K_C psi` from `K_C phi_1..K_C phi_n`.
///
/// Discharges the hypotheses into `phi_1 -> (... -> psi)`, necessitates, then
/// peels each antecedent with Distributivity and Modus Ponens.
pub fn k_lift_transform(p: &Proof, c: &Coalition) -> Result<Proof, TransformError> {
    check_proof(p)?;
    // distinct hypotheses in first-occurrence order
    let mut distinct: Vec<&Formula> = Vec::new();
    for h in &p.hypotheses {
        if !distinct.contains(&h) {
            distinct.push(h);
        }
    }
    let mut theorem = p.clone();
    for h in distinct.iter().rev() {
        theorem = deduction_transform(&theorem, h)?;
    }
    debug_assert!(theorem.hypotheses.is_empty());

    let mut out = Builder { lines: theorem.lines };
    let body = out.formula(out.lines.len()).clone();
    let mut cur = out.push(Formula::know(c.clone(), body.clone()), Justification::NecK(out.lines.len(), c.clone()));
    let mut rest = body;
    for h in &distinct {
        let Formula::Imp(_, tail) = rest else {
            unreachable!("deduction output is an implication chain")
        };
        let tail = *tail;
        let binding = Binding::new()
            .coalition("C", c.clone())
            .formula("phi", (*h).clone())
            .formula("psi", tail.clone());
        let ax = instantiate_axiom(AxiomName::Distributivity, &binding).expect("binding is complete");
        let Formula::Imp(_, step) = ax.clone() else { unreachable!() };
        let ax_at = out.push(
            ax,
            Justification::Axiom {
                name: AxiomName::Distributivity,
                binding,
            },
        );
        let m = out.push(*step, Justification::Mp(cur, ax_at));
        let hyp_index = p.hypotheses.iter().position(|x| x == *h).unwrap() + 1;
        let hyp_at = out.push(Formula::know(c.clone(), (*h).clone()), Justification::Hyp(hyp_index));
        cur = out.push(Formula::know(c.clone(), tail.clone()), Justification::Mp(hyp_at, m));
        rest = tail;
    }

    let proof = Proof {
        hypotheses: p.hypotheses.iter().map(|h| Formula::know(c.clone(), h.clone())).collect(),
        lines: out.lines,
    };
    check_proof(&proof).map_err(TransformError::Output)?;
    Ok(proof)
}
