use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use nalgebra::Complex;
use serde::{Deserialize, Serialize};

pub type C64 = Complex<f64>;
pub type Matrix2 = [[C64; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GateKind {
    Cz,
    T,
    SqrtX,
    SqrtY,
    H,
}

impl GateKind {
    /// Local gates drawn on idle qubits of a random layer.
    pub const RANDOM_LOCAL: [GateKind; 3] = [GateKind::T, GateKind::SqrtX, GateKind::SqrtY];
    pub const LOCAL: [GateKind; 4] = [GateKind::T, GateKind::SqrtX, GateKind::SqrtY, GateKind::H];

    pub fn is_local(self) -> bool {
        self != GateKind::Cz
    }

    /// 2x2 unitary of a single-qubit kind; `None` for CZ.
    pub fn matrix(self) -> Option<Matrix2> {
        let c = |re: f64, im: f64| C64::new(re, im);
        let h = FRAC_1_SQRT_2;
        Some(match self {
            GateKind::Cz => return None,
            GateKind::H => [[c(h, 0.0), c(h, 0.0)], [c(h, 0.0), c(-h, 0.0)]],
            GateKind::T => [[c(1.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), C64::from_polar(1.0, FRAC_PI_4)]],
            GateKind::SqrtX => [[c(0.5, 0.5), c(0.5, -0.5)], [c(0.5, -0.5), c(0.5, 0.5)]],
            GateKind::SqrtY => [[c(0.5, 0.5), c(-0.5, -0.5)], [c(0.5, 0.5), c(0.5, 0.5)]],
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Gate {
    Single { kind: GateKind, qubit: usize },
    Cz(usize, usize),
}

impl Gate {
    pub fn kind(&self) -> GateKind {
        match *self {
            Gate::Single { kind, .. } => kind,
            Gate::Cz(..) => GateKind::Cz,
        }
    }

    pub fn qubits(&self) -> Vec<usize> {
        match *self {
            Gate::Single { qubit, .. } => vec![qubit],
            Gate::Cz(a, b) => vec![a, b],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
        let mut out = [[C64::new(0.0, 0.0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        out
    }

    fn adjoint(a: &Matrix2) -> Matrix2 {
        [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
    }

    fn close(a: &Matrix2, b: &Matrix2) -> bool {
        (0..2).all(|i| (0..2).all(|j| (a[i][j] - b[i][j]).norm() < 1e-14))
    }

    #[test]
    fn local_gates_are_unitary() {
        let id = [[C64::new(1.0, 0.0), C64::new(0.0, 0.0)], [C64::new(0.0, 0.0), C64::new(1.0, 0.0)]];
        for k in GateKind::LOCAL {
            let m = k.matrix().unwrap();
            assert!(close(&mul(&m, &adjoint(&m)), &id), "{k:?}");
        }
        assert!(GateKind::Cz.matrix().is_none());
    }

    #[test]
    fn square_roots_square_to_paulis() {
        let x = [[C64::new(0.0, 0.0), C64::new(1.0, 0.0)], [C64::new(1.0, 0.0), C64::new(0.0, 0.0)]];
        let y = [[C64::new(0.0, 0.0), C64::new(0.0, -1.0)], [C64::new(0.0, 1.0), C64::new(0.0, 0.0)]];
        let sx = GateKind::SqrtX.matrix().unwrap();
        let sy = GateKind::SqrtY.matrix().unwrap();
        assert!(close(&mul(&sx, &sx), &x));
        assert!(close(&mul(&sy, &sy), &y));
        let t = GateKind::T.matrix().unwrap();
        let t2 = mul(&t, &t);
        assert!((t2[1][1] - C64::new(0.0, 1.0)).norm() < 1e-15);
    }
}
