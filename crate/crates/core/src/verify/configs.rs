//! Named configurations exercised by the suites.

use crate::config::{CliConfig, RingDescriptor};
use crate::maps::TwistDescriptor;
use crate::poly::Shape;
use crate::rational::Rational;

fn config(ring: RingDescriptor, twist: TwistDescriptor, shape: Shape) -> CliConfig {
    CliConfig {
        ring,
        twist,
        delta: None,
        shape,
        precision: None,
        variable: "X".into(),
    }
}

pub fn q_twist(q: Rational, shape: Shape) -> CliConfig {
    config(RingDescriptor::builtin("Q(i)"), TwistDescriptor::QTwist { q }, shape)
}

pub fn q_twist_int(q: i64, shape: Shape) -> CliConfig {
    q_twist(Rational::from_integer(q), shape)
}

pub fn gauss_conjugation(shape: Shape) -> CliConfig {
    config(RingDescriptor::builtin("Q(i)"), TwistDescriptor::Conjugation, shape)
}

pub fn m2_diag_swap() -> CliConfig {
    config(
        RingDescriptor::Matrix {
            base: Box::new(RingDescriptor::builtin("Q")),
            n: 2,
        },
        TwistDescriptor::DiagSwap,
        Shape::Laurent,
    )
}

pub fn m2_identity(shape: Shape) -> CliConfig {
    config(
        RingDescriptor::Matrix {
            base: Box::new(RingDescriptor::builtin("Q")),
            n: 2,
        },
        TwistDescriptor::Identity,
        shape,
    )
}

pub fn octonion_conjugation() -> CliConfig {
    config(RingDescriptor::builtin("O"), TwistDescriptor::Conjugation, Shape::Laurent)
}

pub fn octonion_identity(shape: Shape) -> CliConfig {
    config(RingDescriptor::builtin("O"), TwistDescriptor::Identity, shape)
}

/// `ℍ[X±; x ↦ i x i⁻¹]`.
pub fn quaternion_inner() -> CliConfig {
    let u = [0, 1, 0, 0].map(Rational::from_integer).to_vec();
    config(RingDescriptor::builtin("H"), TwistDescriptor::Inner { u }, Shape::Laurent)
}

/// `ℚ[Y][X; id, d/dY]`.
pub fn weyl() -> CliConfig {
    CliConfig {
        delta: Some(TwistDescriptor::Derivative),
        ..config(polynomial("Q", "Y", Shape::Ore), TwistDescriptor::Identity, Shape::Ore)
    }
}

/// `R[Y±][X±; Y ↦ qY]`.
pub fn quantum_torus(base: &str, q: i64) -> CliConfig {
    config(
        polynomial(base, "Y", Shape::Laurent),
        TwistDescriptor::YScale {
            q: Rational::from_integer(q),
            base: None,
        },
        Shape::Laurent,
    )
}

fn polynomial(base: &str, variable: &str, shape: Shape) -> RingDescriptor {
    RingDescriptor::Polynomial {
        coefficients: Box::new(RingDescriptor::builtin(base)),
        twist: TwistDescriptor::Identity,
        delta: None,
        variable: variable.into(),
        shape,
    }
}

/// The Laurent configurations checked by the generic suites.
pub fn laurent_configs() -> Vec<(&'static str, CliConfig)> {
    vec![
        ("q_twist(2)", q_twist_int(2, Shape::Laurent)),
        ("q_twist(-1)", q_twist_int(-1, Shape::Laurent)),
        ("C_conjugation", gauss_conjugation(Shape::Laurent)),
        ("M2_diag_swap", m2_diag_swap()),
        ("O_conjugation", octonion_conjugation()),
        ("H_inner(i)", quaternion_inner()),
    ]
}

/// The Ore configurations checked by the generic suites.
pub fn ore_configs() -> Vec<(&'static str, CliConfig)> {
    vec![
        ("weyl", weyl()),
        ("ore_q_twist(2)", q_twist_int(2, Shape::Ore)),
        ("ore_O_identity", octonion_identity(Shape::Ore)),
    ]
}
