use crate::error::{Error, Result};

/// The closed set of gate kinds the simulator understands. Every kind can
/// carry an arbitrary set of control qubits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    H,
    X,
    Z,
    /// `diag(1, e^{iθ})`.
    Phase(f64),
    Swap,
    /// `exp(-iθX/2)`.
    Rx(f64),
    /// `exp(-iθY/2)`.
    Ry(f64),
}

impl GateKind {
    pub fn name(&self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::X => "x",
            GateKind::Z => "z",
            GateKind::Phase(_) => "phase",
            GateKind::Swap => "swap",
            GateKind::Rx(_) => "rx",
            GateKind::Ry(_) => "ry",
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            GateKind::Swap => 2,
            _ => 1,
        }
    }

    pub fn inverse(&self) -> GateKind {
        match *self {
            GateKind::Phase(t) => GateKind::Phase(-t),
            GateKind::Rx(t) => GateKind::Rx(-t),
            GateKind::Ry(t) => GateKind::Ry(-t),
            k => k,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub controls: Vec<usize>,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>, controls: Vec<usize>) -> Self {
        Gate {
            kind,
            targets,
            controls,
        }
    }

    pub fn single(kind: GateKind, target: usize) -> Self {
        Gate::new(kind, vec![target], Vec::new())
    }

    pub fn controlled(kind: GateKind, target: usize, controls: impl Into<Vec<usize>>) -> Self {
        Gate::new(kind, vec![target], controls.into())
    }

    pub fn inverse(&self) -> Gate {
        Gate {
            kind: self.kind.inverse(),
            targets: self.targets.clone(),
            controls: self.controls.clone(),
        }
    }

    pub fn validate(&self, num_qubits: usize) -> Result<()> {
        if self.targets.len() != self.kind.arity() {
            return Err(Error::TargetArity {
                kind: self.kind.name(),
                expected: self.kind.arity(),
                got: self.targets.len(),
            });
        }
        for &q in self.targets.iter().chain(&self.controls) {
            if q >= num_qubits {
                return Err(Error::QubitOutOfRange {
                    index: q,
                    num_qubits,
                });
            }
        }
        if self.kind == GateKind::Swap && self.targets[0] == self.targets[1] {
            return Err(Error::ControlTargetOverlap(self.targets[0]));
        }
        if let Some(&q) = self.controls.iter().find(|c| self.targets.contains(c)) {
            return Err(Error::ControlTargetOverlap(q));
        }
        Ok(())
    }
}

/// An ordered gate list over a fixed number of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Circuit {
    num_qubits: usize,
    gates: Vec<Gate>,
}

impl Circuit {
    pub fn new(num_qubits: usize) -> Self {
        Circuit {
            num_qubits,
            gates: Vec::new(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    pub fn push(&mut self, gate: Gate) -> Result<&mut Self> {
        gate.validate(self.num_qubits)?;
        self.gates.push(gate);
        Ok(self)
    }

    pub fn h(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::single(GateKind::H, q))
    }

    pub fn x(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::single(GateKind::X, q))
    }

    pub fn z(&mut self, q: usize) -> Result<&mut Self> {
        self.push(Gate::single(GateKind::Z, q))
    }

    pub fn phase(&mut self, theta: f64, q: usize) -> Result<&mut Self> {
        self.push(Gate::single(GateKind::Phase(theta), q))
    }

    pub fn swap(&mut self, a: usize, b: usize) -> Result<&mut Self> {
        self.push(Gate::new(GateKind::Swap, vec![a, b], Vec::new()))
    }

    /// Appends every gate of `other`, which must act on the same register.
    pub fn append(&mut self, other: &Circuit) -> Result<&mut Self> {
        if other.num_qubits != self.num_qubits {
            return Err(Error::QubitCountMismatch {
                state: self.num_qubits,
                circuit: other.num_qubits,
            });
        }
        self.gates.extend(other.gates.iter().cloned());
        Ok(self)
    }

    /// Reversed gate order with every rotation angle negated.
    pub fn adjoint(&self) -> Circuit {
        Circuit {
            num_qubits: self.num_qubits,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
        }
    }

    /// Copy of this circuit in which every gate additionally depends on `controls`.
    pub fn with_controls(&self, controls: &[usize]) -> Result<Circuit> {
        let mut out = Circuit::new(self.num_qubits);
        for g in &self.gates {
            let mut cs = g.controls.clone();
            cs.extend(controls.iter().copied().filter(|c| !g.controls.contains(c)));
            out.push(Gate::new(g.kind, g.targets.clone(), cs))?;
        }
        Ok(out)
    }
}

impl Extend<Gate> for Circuit {
    /// Unchecked extension; gates are validated when the circuit is applied.
    fn extend<I: IntoIterator<Item = Gate>>(&mut self, iter: I) {
        self.gates.extend(iter)
    }
}
