//! Text formats: Clifford circuits, single-qubit unitary specs and gadget
//! description files.

use std::fmt;

use ccc_core::ccc::{decompose_unitary, ExactAngle, UnitaryDecomposition};
use ccc_core::gadgets::Gadget;
use ccc_core::linalg::{c64, gates, is_unitary, ComplexMatrix};
use ccc_core::stabilizer::{CliffordCircuit, CliffordGate};
use ccc_core::BitString;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("unitary spec {spec:?}: {message}")]
    Unitary { spec: String, message: String },
    #[error("{0}")]
    Invalid(String),
}

fn line_err(line: usize, message: impl fmt::Display) -> FormatError {
    FormatError::Line { line, message: message.to_string() }
}

/// Lines with comments stripped, blank lines dropped, numbered from 1.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_index(line: usize, tok: &str) -> Result<usize, FormatError> {
    tok.parse().map_err(|_| line_err(line, format!("expected a qubit index, got {tok:?}")))
}

fn parse_gate(line: usize, text: &str) -> Result<CliffordGate, FormatError> {
    let toks: Vec<&str> = text.split_whitespace().collect();
    let name = toks[0].to_ascii_uppercase();
    let args = &toks[1..];
    let arity = match name.as_str() {
        "H" | "S" | "SDG" | "SDAG" | "X" | "Y" | "Z" => 1,
        "CNOT" | "CX" | "CZ" => 2,
        _ => return Err(line_err(line, format!("unknown gate {:?}", toks[0]))),
    };
    if args.len() != arity {
        return Err(line_err(line, format!("{name} takes {arity} qubit(s), got {}", args.len())));
    }
    let q: Vec<usize> = args.iter().map(|t| parse_index(line, t)).collect::<Result<_, _>>()?;
    Ok(match name.as_str() {
        "H" => CliffordGate::H(q[0]),
        "S" => CliffordGate::S(q[0]),
        "SDG" | "SDAG" => CliffordGate::Sdg(q[0]),
        "X" => CliffordGate::X(q[0]),
        "Y" => CliffordGate::Y(q[0]),
        "Z" => CliffordGate::Z(q[0]),
        "CNOT" | "CX" => CliffordGate::Cnot(q[0], q[1]),
        _ => CliffordGate::Cz(q[0], q[1]),
    })
}

/// Parses numbered lines as a circuit. A `qubits N` header is required
/// unless `width` is given, in which case a header must agree with it.
fn circuit_from_lines(lines: &[(usize, &str)], width: Option<usize>) -> Result<CliffordCircuit, FormatError> {
    let mut rest = lines;
    let mut n = width;
    if let Some(&(line, first)) = lines.first() {
        let toks: Vec<&str> = first.split_whitespace().collect();
        if toks[0].eq_ignore_ascii_case("qubits") {
            if toks.len() != 2 {
                return Err(line_err(line, "expected `qubits N`"));
            }
            let declared: usize = toks[1].parse().map_err(|_| line_err(line, "bad qubit count"))?;
            if let Some(w) = width {
                if w != declared {
                    return Err(line_err(line, format!("circuit declares {declared} qubits, expected {w}")));
                }
            }
            n = Some(declared);
            rest = &lines[1..];
        }
    }
    let n = n.ok_or_else(|| FormatError::Invalid("circuit is missing the `qubits N` header".into()))?;
    let mut c = CliffordCircuit::new(n);
    for &(line, text) in rest {
        let gate = parse_gate(line, text)?;
        c.push(gate).map_err(|e| line_err(line, e))?;
    }
    Ok(c)
}

/// Circuit text: a `qubits N` header, then one gate per line
/// (`H q`, `S q`, `SDG q`, `X q`, `Y q`, `Z q`, `CNOT c t`, `CZ a b`).
/// `#` starts a comment.
pub fn parse_circuit(text: &str) -> Result<CliffordCircuit, FormatError> {
    circuit_from_lines(&content_lines(text), None)
}

/// A parsed single-qubit unitary with the decomposition used to classify it.
#[derive(Clone, Debug)]
pub struct UnitarySpec {
    pub spec: String,
    pub matrix: ComplexMatrix,
    pub decomposition: UnitaryDecomposition,
}

fn unitary_err(spec: &str, message: impl fmt::Display) -> FormatError {
    FormatError::Unitary { spec: spec.to_string(), message: message.to_string() }
}

/// Parses a unitary in one of three forms:
///
/// * a gate name: `I`, `H`, `S`, `SDG`, `T`, `TDG`, `X`, `Y`, `Z`;
/// * rotations multiplied in written order, `rz=pi*1/3 rx=pi*1/2`. The
///   patterns `[rz] rx [rz]` and a lone `rz` keep their angles exact;
/// * eight reals, the row-major entries as `re im` pairs.
pub fn parse_unitary(spec: &str) -> Result<UnitarySpec, FormatError> {
    let s = spec.trim();
    if s.is_empty() {
        return Err(unitary_err(spec, "empty"));
    }
    if let Some(m) = gates::named(&s.to_ascii_lowercase()) {
        return finish(spec, m, None);
    }
    if s.contains('=') {
        return parse_rotations(spec, s);
    }
    let nums: Vec<f64> = s
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<f64>().map_err(|_| unitary_err(spec, format!("unknown gate or number {t:?}"))))
        .collect::<Result<_, _>>()?;
    if nums.len() != 8 {
        return Err(unitary_err(spec, format!("expected 8 reals, got {}", nums.len())));
    }
    let m = ComplexMatrix::from_2x2(
        c64(nums[0], nums[1]),
        c64(nums[2], nums[3]),
        c64(nums[4], nums[5]),
        c64(nums[6], nums[7]),
    );
    finish(spec, m, None)
}

fn parse_rotations(spec: &str, s: &str) -> Result<UnitarySpec, FormatError> {
    let mut m = gates::identity();
    let mut axes = Vec::new();
    let mut angles = Vec::new();
    for tok in s.split_whitespace() {
        let (axis, value) =
            tok.split_once('=').ok_or_else(|| unitary_err(spec, format!("expected axis=angle, got {tok:?}")))?;
        let angle: ExactAngle = value.parse().map_err(|e| unitary_err(spec, e))?;
        let axis = axis.to_ascii_lowercase();
        let g = match axis.as_str() {
            "rz" => gates::rz(angle.radians()),
            "rx" => gates::rx(angle.radians()),
            "ry" => gates::ry(angle.radians()),
            _ => return Err(unitary_err(spec, format!("unknown rotation {axis:?}"))),
        };
        m = m.dot(&g);
        axes.push(axis);
        angles.push(angle);
    }
    let names: Vec<&str> = axes.iter().map(String::as_str).collect();
    let z = ExactAngle::ZERO;
    let exact = match (names.as_slice(), angles.as_slice()) {
        (["rz"], [p]) => Some((*p, z, z)),
        (["rx"], [t]) => Some((z, *t, z)),
        (["rz", "rx"], [p, t]) => Some((*p, *t, z)),
        (["rx", "rz"], [t, l]) => Some((z, *t, *l)),
        (["rz", "rx", "rz"], [p, t, l]) => Some((*p, *t, *l)),
        _ => None,
    };
    let d = exact.map(|(phi, theta, lambda)| UnitaryDecomposition::from_angles(z, phi, theta, lambda));
    finish(spec, m, d)
}

fn finish(spec: &str, matrix: ComplexMatrix, exact: Option<UnitaryDecomposition>) -> Result<UnitarySpec, FormatError> {
    if !is_unitary(&matrix, 1e-10) {
        return Err(unitary_err(spec, "matrix is not unitary"));
    }
    let decomposition = match exact {
        Some(d) => d,
        None => decompose_unitary(&matrix).map_err(|e| unitary_err(spec, e))?,
    };
    Ok(UnitarySpec { spec: spec.to_string(), matrix, decomposition })
}

fn key_value<'a>(line: usize, tok: &'a str, key: &str) -> Result<&'a str, FormatError> {
    tok.strip_prefix(key)
        .and_then(|r| r.strip_prefix('='))
        .ok_or_else(|| line_err(line, format!("expected {key}=..., got {tok:?}")))
}

fn parse_bit(line: usize, s: &str) -> Result<bool, FormatError> {
    match s {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(line_err(line, format!("expected a bit, got {s:?}"))),
    }
}

/// Gadget description:
///
/// ```text
/// gadget k=2 l=1
/// ancilla 0          # bits for ancilla wires l..k, in order
/// post wire=0 bit=0  # one line per postselected wire
/// CZ 0 1             # the Clifford part, optionally headed by `qubits k`
/// ```
pub fn parse_gadget(text: &str, u: &ComplexMatrix) -> Result<Gadget, FormatError> {
    let lines = content_lines(text);
    let (&(hline, header), rest) =
        lines.split_first().ok_or_else(|| FormatError::Invalid("empty gadget file".into()))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || !toks[0].eq_ignore_ascii_case("gadget") {
        return Err(line_err(hline, "expected `gadget k=K l=L`"));
    }
    let num = |tok: &str, key: &str| -> Result<usize, FormatError> {
        key_value(hline, tok, key)?.parse().map_err(|_| line_err(hline, format!("bad {key}")))
    };
    let (k, l) = (num(toks[1], "k")?, num(toks[2], "l")?);
    let mut ancilla = Vec::new();
    let mut post = Vec::new();
    let mut bits = Vec::new();
    let mut body_start = rest.len();
    for (i, &(line, text)) in rest.iter().enumerate() {
        let mut words = text.split_whitespace();
        match words.next().map(str::to_ascii_lowercase).as_deref() {
            Some("ancilla") => {
                for w in words {
                    for ch in w.chars() {
                        ancilla.push(parse_bit(line, &ch.to_string())?);
                    }
                }
            }
            Some("post") => {
                let args: Vec<&str> = words.collect();
                if args.len() != 2 {
                    return Err(line_err(line, "expected `post wire=W bit=B`"));
                }
                let wire = key_value(line, args[0], "wire")?;
                post.push(wire.parse().map_err(|_| line_err(line, format!("bad wire {wire:?}")))?);
                bits.push(parse_bit(line, key_value(line, args[1], "bit")?)?);
            }
            _ => {
                body_start = i;
                break;
            }
        }
    }
    let gamma = circuit_from_lines(&rest[body_start..], Some(k))?;
    let g = Gadget {
        k,
        l,
        u: u.clone(),
        ancilla_bits: BitString::from_bits(ancilla),
        gamma,
        postselect: post,
        postselect_bits: BitString::from_bits(bits),
    };
    g.validate().map_err(|e| FormatError::Invalid(e.to_string()))?;
    Ok(g)
}
