use super::ThetaKind;
use crate::ring::{int, rat, Rational, Ring};
use crate::series::{Laurent, QSeries};

/// Trigonometric prefactor in `v`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Trig {
    /// `2 sin(pi v)`
    TwoSin,
    /// `2 cos(pi v)`
    TwoCos,
    One,
}

/// Symbolic prefactor `c(q)^c_power * q^q_offset * trig(v)`, never expanded.
#[derive(Clone, Debug, PartialEq)]
pub struct Prefactor {
    pub c_power: i64,
    pub q_offset: Rational,
    pub trig: Trig,
}

/// A theta function as prefactor times a q-series over `Laurent(z)`,
/// `z = e^{2 pi i v}`.
#[derive(Clone, Debug, PartialEq)]
pub struct ThetaSeries {
    pub kind: ThetaKind,
    pub prefactor: Prefactor,
    pub body: QSeries<Laurent>,
}

impl ThetaKind {
    pub fn prefactor(self) -> Prefactor {
        let (q_offset, trig) = match self {
            Self::Theta => (rat(1, 8), Trig::TwoSin),
            Self::Theta1 => (rat(1, 8), Trig::TwoCos),
            Self::Theta2 | Self::Theta3 => (int(0), Trig::One),
        };
        Prefactor {
            c_power: 1,
            q_offset,
            trig,
        }
    }

    /// Sign `s` and first grid exponent `e` of the factors `(1 + s q^{e/2 + n - 1} w^{+-1})`.
    pub(crate) fn factor_shape(self) -> (i64, usize) {
        match self {
            Self::Theta => (-1, 2),
            Self::Theta1 => (1, 2),
            Self::Theta2 => (-1, 1),
            Self::Theta3 => (1, 1),
        }
    }
}

/// `prod_n (1 + s q^{e_n} w)(1 + s q^{e_n} w_inv)` to grid order `order`,
/// with `w` in any coefficient ring. This is the z-dependent body of every
/// theta function after removing the prefactor.
pub fn theta_body<C: Ring>(kind: ThetaKind, w: &C, w_inv: &C, order: usize) -> QSeries<C> {
    let (sign, first) = kind.factor_shape();
    let zero = w.zero_like();
    let mut coeffs = vec![zero; order.max(1)];
    coeffs[0] = w.one_like();
    let sw = if sign < 0 { w.negated() } else { w.clone() };
    let sw_inv = if sign < 0 { w_inv.negated() } else { w_inv.clone() };
    let mut e = first;
    while e < order {
        for factor in [&sw, &sw_inv] {
            // multiply in place by (1 + factor q^{e/2}), high indices first
            for i in (e..order).rev() {
                if !coeffs[i - e].is_zero() {
                    let add = coeffs[i - e].times(factor);
                    coeffs[i] = coeffs[i].plus(&add);
                }
            }
        }
        e += 2;
    }
    QSeries::from_coeffs(int(0), coeffs)
}

/// Exact product expansion of a theta function to grid order `order`.
pub fn theta_qseries(kind: ThetaKind, order: usize) -> ThetaSeries {
    let z = Laurent::monomial(int(1), 1);
    let z_inv = Laurent::monomial(int(1), -1);
    ThetaSeries {
        kind,
        prefactor: kind.prefactor(),
        body: theta_body(kind, &z, &z_inv, order),
    }
}

/// `theta'(0, tau) / (2 pi) = q^{1/8} c(q)^3`.
pub fn theta_prime0_series(order: usize) -> QSeries<Rational> {
    QSeries::euler_power(3, order).with_offset(rat(1, 8))
}
