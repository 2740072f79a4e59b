use std::f64::consts::FRAC_PI_2;

use num_complex::Complex64;
use osa_core::exprcore::{
    differentiate_x, evaluate, evaluate_terms, Bindings, Coefficient, ElemKind, ExponentExpr, Expr,
    Factor, FuncName, Monomial, Rational,
};
use proptest::prelude::*;

#[derive(Clone, Debug)]
pub enum Node {
    Leaf(Monomial),
    Sum(Box<Node>, Box<Node>),
    Prod(Box<Node>, Box<Node>),
    Dx(Box<Node>),
}

impl Node {
    pub fn build(&self) -> Expr {
        match self {
            Node::Leaf(m) => Expr::from_monomials(vec![m.clone()]),
            Node::Sum(a, b) => a.build().add(&b.build()),
            Node::Prod(a, b) => a.build().mul(&b.build()),
            Node::Dx(a) => differentiate_x(&a.build()).unwrap(),
        }
    }
}

fn factor() -> impl Strategy<Value = Factor> {
    prop_oneof![
        (0u32..4, 1i64..=4).prop_map(|(order, p)| Factor::FieldDeriv {
            order,
            power: ExponentExpr::constant(p)
        }),
        (-2i64..=4).prop_map(|p| Factor::FieldDeriv {
            order: 0,
            power: ExponentExpr::constant(p)
        }),
        Just(Factor::FieldDeriv {
            order: 0,
            power: ExponentExpr::from_parts(-1, [("m".to_string(), 1)])
        }),
        (
            prop_oneof![Just(FuncName::F), Just(FuncName::G), Just(FuncName::H)],
            0u32..3,
            1u32..=2
        )
            .prop_map(|(name, deriv_order, power)| Factor::FuncSym {
                name,
                deriv_order,
                power
            }),
        (
            prop_oneof![Just(ElemKind::Sin), Just(ElemKind::Cos)],
            1u32..=2
        )
            .prop_map(|(kind, power)| Factor::Elementary { kind, power }),
    ]
}

pub fn monomial() -> impl Strategy<Value = Monomial> {
    (
        -5i128..=5,
        1i128..=4,
        any::<bool>(),
        prop::collection::vec(factor(), 1..=3),
    )
        .prop_map(|(n, d, param, fs)| {
            let mut c = Coefficient::rational(Rational::new(if n == 0 { 1 } else { n }, d));
            if param {
                c.mul_param("a", &ExponentExpr::one());
            }
            Monomial::new(c, fs)
        })
}

/// Sums, products and x-derivatives of random monomials, depth at most 3.
pub fn node() -> impl Strategy<Value = Node> {
    monomial()
        .prop_map(Node::Leaf)
        .prop_recursive(3, 24, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Sum(Box::new(a), Box::new(b))),
                (inner.clone(), inner.clone())
                    .prop_map(|(a, b)| Node::Prod(Box::new(a), Box::new(b))),
                inner.prop_map(|a| Node::Dx(Box::new(a))),
            ]
        })
}

/// Bindings for `u(x) = sin x + 2` with `f = exp`, `g = sin`, `h = cos`.
pub fn bindings_at(x: f64, orders: u32) -> Bindings {
    let u = x.sin() + 2.0;
    let mut field = vec![u];
    field.extend((1..=orders).map(|k| (x + k as f64 * FRAC_PI_2).sin()));
    let mut b = Bindings::real_field(&field).param("a", 1.5).param("m", 3.0);
    for r in 0..=orders + 8 {
        let shift = r as f64 * FRAC_PI_2;
        b.funcs
            .insert((FuncName::F, r), Complex64::new(u.exp(), 0.0));
        b.funcs
            .insert((FuncName::G, r), Complex64::new((u + shift).sin(), 0.0));
        b.funcs
            .insert((FuncName::H, r), Complex64::new((u + shift).cos(), 0.0));
    }
    b
}

/// Eighth-order central first-difference weights for offsets 1..=4.
const FD8: [f64; 4] = [4.0 / 5.0, -1.0 / 5.0, 4.0 / 105.0, -1.0 / 280.0];

/// Relative gap between the symbolic x-derivative of `e` at `x0` and an
/// eighth-order finite difference of `e`, scaled by the largest term of
/// either and never by less than 1 (the bindings are all of order one), so
/// points where everything vanishes are not judged on noise.
pub fn fd_gap(e: &Expr, x0: f64) -> f64 {
    let d = differentiate_x(e).unwrap();
    let orders = d.max_x_order().max(e.max_x_order()) + 1;
    let at = |x: f64| evaluate(e, &bindings_at(x, orders)).unwrap().re;
    let h = 2.5e-3;
    let fd: f64 = FD8
        .iter()
        .enumerate()
        .map(|(i, w)| {
            let s = (i + 1) as f64 * h;
            w * (at(x0 + s) - at(x0 - s))
        })
        .sum::<f64>()
        / h;
    let b = bindings_at(x0, orders);
    let exact = evaluate(&d, &b).unwrap().re;
    let scale = evaluate_terms(&d, &b)
        .unwrap()
        .iter()
        .chain(evaluate_terms(e, &b).unwrap().iter())
        .map(|t| t.norm())
        .fold(exact.abs(), f64::max)
        .max(1.0);
    (fd - exact).abs() / scale
}
