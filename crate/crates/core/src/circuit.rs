//! Circuits over `{H, CNOT, P(π/8)}` and their text format.
//!
//! ```text
//! # comment
//! qubits 3
//! h 3
//! cnot 1 3
//! p 3
//! ```
//!
//! Qubits are numbered from 1.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest qubit count accepted: the compiled graph has `2ⁿ` wires.
pub const MAX_QUBITS: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    H,
    Cnot,
    P,
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GateKind::H => "h",
            GateKind::Cnot => "cnot",
            GateKind::P => "p",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    H(usize),
    P(usize),
    Cnot { control: usize, target: usize },
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match self {
            Gate::H(_) => GateKind::H,
            Gate::P(_) => GateKind::P,
            Gate::Cnot { .. } => GateKind::Cnot,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::P(q) => vec![q],
            Gate::Cnot { control, target } => vec![control, target],
        }
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gate::H(q) => write!(f, "h {q}"),
            Gate::P(q) => write!(f, "p {q}"),
            Gate::Cnot { control, target } => write!(f, "cnot {control} {target}"),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: unknown gate `{name}`")]
    UnknownGate { line: usize, name: String },
    #[error("line {line}: qubit index `{token}` is not in 1..={n}")]
    BadIndex {
        line: usize,
        token: String,
        n: usize,
    },
    #[error("line {line}: cnot control and target are both qubit {qubit}")]
    SameControlTarget { line: usize, qubit: usize },
    #[error("line {line}: `{name}` takes {expected} argument(s), got {got}")]
    Arity {
        line: usize,
        name: String,
        expected: usize,
        got: usize,
    },
    #[error("line {line}: gate before the `qubits` declaration")]
    MissingQubits { line: usize },
    #[error("line {line}: `qubits` declared twice")]
    DuplicateQubits { line: usize },
    #[error("line {line}: qubit count `{token}` must be in 1..={max}")]
    BadQubitCount {
        line: usize,
        token: String,
        max: usize,
    },
    #[error("no `qubits` declaration")]
    Empty,
}

/// A validated circuit.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitIR {
    n: usize,
    gates: Vec<Gate>,
}

impl CircuitIR {
    /// Checks qubit ranges and control/target distinctness. `line` in errors
    /// is the gate's position, counting from 1.
    pub fn new(n: usize, gates: Vec<Gate>) -> Result<Self, ParseError> {
        if n == 0 || n > MAX_QUBITS {
            return Err(ParseError::BadQubitCount {
                line: 0,
                token: n.to_string(),
                max: MAX_QUBITS,
            });
        }
        for (i, g) in gates.iter().enumerate() {
            let line = i + 1;
            for q in g.qubits() {
                if q == 0 || q > n {
                    return Err(ParseError::BadIndex {
                        line,
                        token: q.to_string(),
                        n,
                    });
                }
            }
            if let Gate::Cnot { control, target } = *g {
                if control == target {
                    return Err(ParseError::SameControlTarget {
                        line,
                        qubit: control,
                    });
                }
            }
        }
        Ok(Self { n, gates })
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("qubits {}\n", self.n);
        for g in &self.gates {
            s.push_str(&format!("{g}\n"));
        }
        s
    }
}

fn parse_qubit(token: &str, line: usize, n: usize) -> Result<usize, ParseError> {
    match token.parse::<usize>() {
        Ok(q) if (1..=n).contains(&q) => Ok(q),
        _ => Err(ParseError::BadIndex {
            line,
            token: token.to_string(),
            n,
        }),
    }
}

pub fn parse_circuit(text: &str) -> Result<CircuitIR, ParseError> {
    let mut n: Option<usize> = None;
    let mut gates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut tokens = content.split_whitespace();
        let Some(head) = tokens.next() else { continue };
        let args: Vec<&str> = tokens.collect();
        let name = head.to_ascii_lowercase();
        let arity = |expected: usize| -> Result<(), ParseError> {
            if args.len() != expected {
                return Err(ParseError::Arity {
                    line,
                    name: name.clone(),
                    expected,
                    got: args.len(),
                });
            }
            Ok(())
        };
        if name == "qubits" {
            arity(1)?;
            if n.is_some() {
                return Err(ParseError::DuplicateQubits { line });
            }
            match args[0].parse::<usize>() {
                Ok(k) if (1..=MAX_QUBITS).contains(&k) => n = Some(k),
                _ => {
                    return Err(ParseError::BadQubitCount {
                        line,
                        token: args[0].to_string(),
                        max: MAX_QUBITS,
                    })
                }
            }
            continue;
        }
        if !matches!(name.as_str(), "h" | "p" | "cnot") {
            return Err(ParseError::UnknownGate {
                line,
                name: head.to_string(),
            });
        }
        let Some(n) = n else {
            return Err(ParseError::MissingQubits { line });
        };
        let gate = match name.as_str() {
            "h" => {
                arity(1)?;
                Gate::H(parse_qubit(args[0], line, n)?)
            }
            "p" => {
                arity(1)?;
                Gate::P(parse_qubit(args[0], line, n)?)
            }
            _ => {
                arity(2)?;
                let control = parse_qubit(args[0], line, n)?;
                let target = parse_qubit(args[1], line, n)?;
                if control == target {
                    return Err(ParseError::SameControlTarget {
                        line,
                        qubit: control,
                    });
                }
                Gate::Cnot { control, target }
            }
        };
        gates.push(gate);
    }
    let n = n.ok_or(ParseError::Empty)?;
    Ok(CircuitIR { n, gates })
}

impl FromStr for CircuitIR {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_circuit(s)
    }
}
