//! Circuit IR, text format, execution and equivalence checks.
//!
//! The text format is line based. `#` starts a comment and blank lines are
//! ignored:
//!
//! ```text
//! qubits 3        # register width, required first
//! work 1          # work qubits appended after the register, optional
//! h 0
//! ccx 0 1 3
//! ncx 0 1 2 3     # any number of controls, target last
//! gphase -i
//! ```
//!
//! Mnemonics: `x h s t tdg cx ccx ncx gphase`. `gphase` takes `i`, `-1` or `-i`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use crate::gates::{self, GateKind, Phase};
use crate::qcore::{Matrix, StateVector};
use crate::{Error, Result, MAX_DENSE_QUBITS};

/// One gate application.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Gate {
    X(usize),
    H(usize),
    S(usize),
    T(usize),
    Tdg(usize),
    Cx { controls: Vec<usize>, target: usize },
    GPhase(Phase),
}

impl Gate {
    pub fn cx(control: usize, target: usize) -> Self {
        Gate::Cx { controls: vec![control], target }
    }

    pub fn ccx(c1: usize, c2: usize, target: usize) -> Self {
        Gate::Cx { controls: vec![c1, c2], target }
    }

    pub fn ncx(controls: Vec<usize>, target: usize) -> Self {
        Gate::Cx { controls, target }
    }

    pub fn one_qubit(kind: GateKind, q: usize) -> Option<Self> {
        Some(match kind {
            GateKind::X => Gate::X(q),
            GateKind::H => Gate::H(q),
            GateKind::S => Gate::S(q),
            GateKind::T => Gate::T(q),
            GateKind::Tdg => Gate::Tdg(q),
            _ => return None,
        })
    }

    pub fn kind(&self) -> GateKind {
        match self {
            Gate::X(_) => GateKind::X,
            Gate::H(_) => GateKind::H,
            Gate::S(_) => GateKind::S,
            Gate::T(_) => GateKind::T,
            Gate::Tdg(_) => GateKind::Tdg,
            Gate::Cx { controls, .. } => GateKind::Cx { num_controls: controls.len() },
            Gate::GPhase(p) => GateKind::GPhase(*p),
        }
    }

    /// The single qubit a one-qubit gate acts on.
    pub fn qubit(&self) -> Option<usize> {
        match *self {
            Gate::X(q) | Gate::H(q) | Gate::S(q) | Gate::T(q) | Gate::Tdg(q) => Some(q),
            _ => None,
        }
    }

    /// Every qubit index the gate references.
    pub fn qubits(&self) -> Vec<usize> {
        match self {
            Gate::Cx { controls, target } => controls.iter().copied().chain([*target]).collect(),
            Gate::GPhase(_) => Vec::new(),
            g => vec![g.qubit().expect("one-qubit gate")],
        }
    }

    /// Renames qubits through `f`.
    pub fn map_qubits(&self, f: impl Fn(usize) -> usize) -> Self {
        match self {
            Gate::Cx { controls, target } => {
                Gate::Cx { controls: controls.iter().map(|&c| f(c)).collect(), target: f(*target) }
            }
            Gate::GPhase(p) => Gate::GPhase(*p),
            g => Gate::one_qubit(g.kind(), f(g.qubit().unwrap())).unwrap(),
        }
    }

    /// Elementary means one-qubit or single-control CX.
    pub fn is_elementary(&self) -> bool {
        match self {
            Gate::Cx { controls, .. } => controls.len() == 1,
            Gate::GPhase(_) => false,
            _ => true,
        }
    }

    fn validate(&self, width: usize) -> Result<()> {
        match self {
            Gate::Cx { controls, target } => gates::check_controls(controls, *target, width),
            Gate::GPhase(_) => Ok(()),
            g => {
                let q = g.qubit().unwrap();
                if q < width {
                    Ok(())
                } else {
                    Err(Error::QubitOutOfRange { index: q, num_qubits: width })
                }
            }
        }
    }

    /// Applies the gate in place.
    pub fn apply(&self, state: &mut StateVector) -> Result<()> {
        match self {
            Gate::Cx { controls, target } => gates::apply_controlled_x(state, controls, *target),
            Gate::GPhase(p) => gates::apply_global_phase(state, p.factor()),
            g => gates::apply_kind(state, g.qubit().unwrap(), g.kind()),
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind().mnemonic())?;
        match self {
            Gate::GPhase(p) => write!(f, " {p}"),
            g => g.qubits().iter().try_for_each(|q| write!(f, " {q}")),
        }
    }
}

/// An ordered gate list over `num_qubits` register qubits followed by
/// `num_work` work qubits.
///
/// Work qubits start in `|0⟩`; circuits built by this crate return them to
/// `|0⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Circuit {
    num_qubits: usize,
    num_work: usize,
    ops: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Self::with_work(num_qubits, 0)
    }

    pub fn with_work(num_qubits: usize, num_work: usize) -> Self {
        Self { num_qubits, num_work, ops: Vec::new() }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn num_work(&self) -> usize {
        self.num_work
    }

    pub fn total_qubits(&self) -> usize {
        self.num_qubits + self.num_work
    }

    pub fn ops(&self) -> &[Gate] {
        &self.ops
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.total_qubits())?;
        self.ops.push(gate);
        Ok(self)
    }

    /// Appends every gate of `other`. Its width must fit inside `self`.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.total_qubits() > self.total_qubits() {
            return Err(Error::DimensionMismatch { expected: self.total_qubits(), actual: other.total_qubits() });
        }
        self.ops.extend_from_slice(&other.ops);
        Ok(self)
    }

    /// Grows the work register to at least `num_work` qubits.
    pub fn reserve_work(&mut self, num_work: usize) {
        self.num_work = self.num_work.max(num_work);
    }

    /// Runs the circuit on a copy of `input`.
    pub fn run(&self, input: &StateVector) -> Result<StateVector> {
        let mut state = input.clone();
        self.run_in_place(&mut state)?;
        Ok(state)
    }

    pub fn run_in_place(&self, state: &mut StateVector) -> Result<()> {
        if state.num_qubits() != self.total_qubits() {
            return Err(Error::DimensionMismatch { expected: self.total_qubits(), actual: state.num_qubits() });
        }
        self.ops.iter().try_for_each(|g| g.apply(state))
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_circuit(self))
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_index(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| parse_err(line, format!("expected a qubit index, found `{tok}`")))
}

/// Parses circuit text.
pub fn parse_circuit(text: &str) -> Result<Circuit> {
    let mut circuit: Option<Circuit> = None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let stmt = raw.split('#').next().unwrap_or("").trim();
        if stmt.is_empty() {
            continue;
        }
        let mut toks = stmt.split_whitespace();
        let mnemonic = toks.next().unwrap();
        let args: Vec<&str> = toks.collect();

        let Some(c) = circuit.as_mut() else {
            if mnemonic != "qubits" || args.len() != 1 {
                return Err(parse_err(line, "expected `qubits <m>` header"));
            }
            let m = args[0].parse().map_err(|_| parse_err(line, format!("bad qubit count `{}`", args[0])))?;
            circuit = Some(Circuit::new(m));
            continue;
        };

        let arity = |want: usize| -> Result<()> {
            if args.len() == want {
                Ok(())
            } else {
                Err(parse_err(line, format!("`{mnemonic}` takes {want} argument(s), found {}", args.len())))
            }
        };
        let gate = match mnemonic {
            "work" => {
                arity(1)?;
                if !c.ops.is_empty() || c.num_work != 0 {
                    return Err(parse_err(line, "`work` must directly follow the header"));
                }
                c.num_work = args[0].parse().map_err(|_| parse_err(line, format!("bad work count `{}`", args[0])))?;
                continue;
            }
            "x" | "h" | "s" | "t" | "tdg" => {
                arity(1)?;
                let q = parse_index(args[0], line)?;
                match mnemonic {
                    "x" => Gate::X(q),
                    "h" => Gate::H(q),
                    "s" => Gate::S(q),
                    "t" => Gate::T(q),
                    _ => Gate::Tdg(q),
                }
            }
            "cx" | "ccx" | "ncx" => {
                match mnemonic {
                    "cx" => arity(2)?,
                    "ccx" => arity(3)?,
                    _ if args.len() < 2 => return Err(parse_err(line, "`ncx` needs at least one control and a target")),
                    _ => {}
                }
                let mut idx = args.iter().map(|t| parse_index(t, line)).collect::<Result<Vec<_>>>()?;
                let target = idx.pop().unwrap();
                Gate::Cx { controls: idx, target }
            }
            "gphase" => {
                arity(1)?;
                Gate::GPhase(match args[0] {
                    "i" => Phase::I,
                    "-1" => Phase::MinusOne,
                    "-i" => Phase::MinusI,
                    other => return Err(parse_err(line, format!("unsupported phase `{other}`"))),
                })
            }
            "qubits" => return Err(parse_err(line, "duplicate `qubits` header")),
            other => return Err(parse_err(line, format!("unknown mnemonic `{other}`"))),
        };
        c.push(gate).map_err(|e| parse_err(line, e.to_string()))?;
    }
    circuit.ok_or_else(|| parse_err(0, "missing `qubits` header"))
}

/// Canonical text: header, then one gate per line with single spaces.
pub fn serialize_circuit(c: &Circuit) -> String {
    let mut out = format!("qubits {}\n", c.num_qubits);
    if c.num_work > 0 {
        let _ = writeln!(out, "work {}", c.num_work);
    }
    for g in &c.ops {
        let _ = writeln!(out, "{g}");
    }
    out
}

/// Dense unitary of the circuit over all of its qubits.
pub fn circuit_matrix(c: &Circuit) -> Result<Matrix> {
    let m = c.total_qubits();
    if m > MAX_DENSE_QUBITS {
        return Err(Error::TooManyQubits(m));
    }
    let columns = (0..1usize << m).map(|j| c.run(&StateVector::basis(m, j))).collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_columns(&columns))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquivalenceMode {
    Exact,
    /// Equal up to one unit-modulus factor.
    GlobalPhase,
}

/// Compares two square matrices entrywise.
///
/// In global-phase mode the witness `λ` comes from the entry where `b` is
/// largest, which keeps the division well conditioned.
pub fn equivalent(a: &Matrix, b: &Matrix, mode: EquivalenceMode, eps: f64) -> Result<bool> {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return Err(Error::DimensionMismatch { expected: a.rows() * a.cols(), actual: b.rows() * b.cols() });
    }
    match mode {
        EquivalenceMode::Exact => Ok(a.max_abs_diff(b)? < eps),
        EquivalenceMode::GlobalPhase => {
            let Some((k, bk)) = b
                .entries()
                .iter()
                .enumerate()
                .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            else {
                return Ok(true);
            };
            let ak = a.entries()[k];
            if bk.norm() < eps || ak.norm() < eps {
                return Ok(a.max_abs_diff(b)? < eps);
            }
            let ratio = ak / bk;
            let lambda = ratio / ratio.norm();
            Ok(a.max_abs_diff(&b.scale(lambda))? < eps)
        }
    }
}

/// Gate counts of a circuit.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GateCensus {
    /// Count per mnemonic.
    pub counts: BTreeMap<&'static str, usize>,
    /// One-qubit gates plus single-control CX.
    pub elementary: usize,
    /// CX with two or more controls.
    pub non_elementary: usize,
    /// Global phase statements, counted in neither class.
    pub phases: usize,
}

impl GateCensus {
    pub fn count(&self, mnemonic: &str) -> usize {
        self.counts.get(mnemonic).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.elementary + self.non_elementary + self.phases
    }
}

impl fmt::Display for GateCensus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.counts {
            write!(f, "{k}={v} ")?;
        }
        write!(f, "elementary={} non_elementary={}", self.elementary, self.non_elementary)
    }
}

pub fn gate_census(c: &Circuit) -> GateCensus {
    let mut census = GateCensus::default();
    for g in &c.ops {
        *census.counts.entry(g.kind().mnemonic()).or_default() += 1;
        match g {
            Gate::GPhase(_) => census.phases += 1,
            g if g.is_elementary() => census.elementary += 1,
            _ => census.non_elementary += 1,
        }
    }
    census
}
