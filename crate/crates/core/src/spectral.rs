//! Exact characteristic polynomials and adjacency spectra.
//!
//! `det(xI - A)` is recovered by evaluating `det(cI - A)` exactly at the
//! integer points `0, 1, -1, 2, -2, ...` with fraction-free (Bareiss)
//! elimination and interpolating. Divided differences of an integer
//! polynomial at integer nodes are integers, so the Newton interpolation
//! never leaves `Z` and every division is checked to be exact.

use std::thread;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::graph::Graph;
use crate::poly::IntPoly;

/// `det(xI - A)`, monic of degree `v`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly(IntPoly);

impl CharPoly {
    pub fn poly(&self) -> &IntPoly {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.degree()
    }

    /// Coefficient of `x^i`.
    pub fn coeff(&self, i: usize) -> BigInt {
        self.0.coeff(i)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        self.0.coeffs()
    }
}

impl std::fmt::Display for CharPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact determinant by Bareiss elimination. Consumes the matrix.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !m[i][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, p);
            negate = !negate;
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let factor = row[k].clone();
            for j in k + 1..n {
                let x = &row[j] * pivot - &factor * &pivot_row[j];
                row[j] = if prev.is_one() { x } else { x / &prev };
            }
            row[k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if negate {
        -d
    } else {
        d
    }
}

/// Interpolation nodes `0, 1, -1, 2, -2, ...`.
fn node(i: usize) -> i64 {
    let h = i.div_ceil(2) as i64;
    if i % 2 == 1 {
        h
    } else {
        -h
    }
}

fn shifted_determinant(g: &Graph, c: i64) -> BigInt {
    let v = g.order();
    let m = (0..v)
        .map(|i| {
            (0..v)
                .map(|j| {
                    if i == j {
                        BigInt::from(c)
                    } else if g.is_adjacent(i, j) {
                        BigInt::from(-1)
                    } else {
                        BigInt::zero()
                    }
                })
                .collect()
        })
        .collect();
    bareiss_determinant(m)
}

pub fn char_poly(g: &Graph) -> CharPoly {
    let v = g.order();
    let xs: Vec<i64> = (0..=v).map(node).collect();
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(xs.len())
        .max(1);
    let chunk = xs.len().div_ceil(workers);
    let ys: Vec<BigInt> = thread::scope(|s| {
        let handles: Vec<_> = xs
            .chunks(chunk)
            .map(|part| {
                s.spawn(move || {
                    part.iter()
                        .map(|&c| shifted_determinant(g, c))
                        .collect::<Vec<_>>()
                })
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("determinant worker panicked"))
            .collect()
    });
    let poly = interpolate(&xs, ys);
    assert!(
        poly.degree() == v && poly.leading().is_one(),
        "interpolated characteristic polynomial is not monic of degree {v}"
    );
    CharPoly(poly)
}

/// Newton interpolation through `(xs[i], ys[i])`; the result must have integer coefficients.
fn interpolate(xs: &[i64], mut dd: Vec<BigInt>) -> IntPoly {
    let n = xs.len();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigInt::from(xs[i] - xs[i - level]);
            let (q, r) = num.div_rem(&den);
            assert!(r.is_zero(), "non-integral divided difference");
            dd[i] = q;
        }
    }
    // expand c0 + c1 (x - x0) + c2 (x - x0)(x - x1) + ...
    let mut acc = IntPoly::new(vec![dd[n - 1].clone()]);
    for i in (0..n - 1).rev() {
        acc = acc.mul(&IntPoly::linear(xs[i]));
        let mut c = acc.coeffs().to_vec();
        if c.is_empty() {
            c.push(BigInt::zero());
        }
        c[0] += &dd[i];
        acc = IntPoly::new(c);
    }
    acc
}

pub fn cospectral(g1: &Graph, g2: &Graph) -> bool {
    g1.order() == g2.order() && char_poly(g1) == char_poly(g2)
}

/// An eigenvalue `(a ± √b) / c`, or an integer (`b = 0`, `c = 1`).
/// `text` pulls square factors out of the radical.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactValue {
    pub a: i64,
    /// `+1` or `-1`.
    pub sign: i8,
    pub b: i64,
    pub c: i64,
    pub text: String,
}

impl ExactValue {
    fn integer(a: i64) -> Self {
        ExactValue {
            a,
            sign: 1,
            b: 0,
            c: 1,
            text: a.to_string(),
        }
    }

    /// The root of `x^2 + px + q` with the given sign of the surd.
    fn quadratic_root(p: i64, q: i64, sign: i8) -> Self {
        // (-p ± s·√r) / 2 with disc = s²·r
        let disc = p * p - 4 * q;
        let (mut s, mut r) = (1i64, disc);
        let mut f = 2;
        while f * f <= r {
            while r % (f * f) == 0 {
                r /= f * f;
                s *= f;
            }
            f += 1;
        }
        let g = (-p).gcd(&s).gcd(&2);
        let (a, s, c) = (-p / g, s / g, 2 / g);
        let surd = if s == 1 {
            format!("√{r}")
        } else {
            format!("{s}√{r}")
        };
        let op = if sign > 0 { "+" } else { "-" };
        let head = if a == 0 {
            if sign > 0 {
                surd.clone()
            } else {
                format!("-{surd}")
            }
        } else {
            format!("{a}{op}{surd}")
        };
        let text = if c == 1 {
            head
        } else {
            format!("({head})/{c}")
        };
        // fold s into the radicand so the record reads (a ± √b)/c
        ExactValue {
            a,
            sign,
            b: s * s * r,
            c,
            text,
        }
    }

    pub fn to_f64(&self) -> f64 {
        (self.a as f64 + self.sign as f64 * (self.b as f64).sqrt()) / self.c as f64
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumEntry {
    /// Decimal approximation, 12 significant digits.
    pub value: String,
    pub exact: Option<ExactValue>,
    pub mult: usize,
}

impl SpectrumEntry {
    pub fn approx(&self) -> f64 {
        self.value
            .parse()
            .expect("spectrum values are decimal strings")
    }
}

fn decimal(x: f64) -> String {
    let s = format!("{:.*e}", 11, x);
    let v: f64 = s.parse().unwrap();
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

/// Eigenvalues with multiplicities, largest first.
///
/// Multiplicities come from the exact square-free factorization of the
/// characteristic polynomial; linear and quadratic factors are reported
/// symbolically. Decimal values are taken from a floating-point symmetric
/// eigensolver and attributed to factors by Newton distance.
pub fn spectrum_report(g: &Graph) -> Vec<SpectrumEntry> {
    let v = g.order();
    if v == 0 {
        return Vec::new();
    }
    let cp = char_poly(g);
    let bound = (0..v).map(|u| g.degree(u)).max().unwrap_or(0) as i64;

    let mut numeric: Vec<f64> = {
        let m =
            nalgebra::DMatrix::from_fn(v, v, |i, j| if g.is_adjacent(i, j) { 1.0 } else { 0.0 });
        m.symmetric_eigenvalues().iter().copied().collect()
    };
    numeric.sort_by(|a, b| b.partial_cmp(a).unwrap());

    let mut entries: Vec<SpectrumEntry> = Vec::new();
    let mut leftovers: Vec<(IntPoly, usize)> = Vec::new();
    for (mut h, mult) in cp.poly().square_free_decomposition() {
        for r in -bound..=bound {
            if h.degree() == 0 {
                break;
            }
            if h.eval(&BigInt::from(r)).is_zero() {
                h = h
                    .exact_div_monic(&IntPoly::linear(r))
                    .expect("root divides");
                entries.push(SpectrumEntry {
                    value: decimal(r as f64),
                    exact: Some(ExactValue::integer(r)),
                    mult,
                });
                remove_near(&mut numeric, r as f64, mult);
            }
        }
        if h.degree() > 0 {
            leftovers.push((h, mult));
        }
    }

    // each square-free factor of degree d and multiplicity m claims the d·m
    // numeric eigenvalues it fits best; consecutive runs of m are one root
    let mut roots_of: Vec<Vec<f64>> = Vec::with_capacity(leftovers.len());
    for (h, mult) in &leftovers {
        let want = h.degree() * mult;
        let score = |x: f64| {
            let s = newton_step(h, x);
            if s.is_nan() {
                f64::INFINITY
            } else {
                s
            }
        };
        let mut idx: Vec<usize> = (0..numeric.len()).collect();
        idx.sort_by(|&a, &b| score(numeric[a]).total_cmp(&score(numeric[b])));
        let mut picked: Vec<usize> = idx.into_iter().take(want).collect();
        picked.sort_unstable_by(|a, b| b.cmp(a));
        let mut values: Vec<f64> = picked.iter().map(|&k| numeric.remove(k)).collect();
        values.sort_by(|a, b| b.total_cmp(a));
        roots_of.push(
            values
                .chunks(*mult)
                .map(|c| polish(h, c.iter().sum::<f64>() / c.len() as f64))
                .collect(),
        );
    }
    for ((h, mult), roots) in leftovers.into_iter().zip(roots_of) {
        let mut h = h;
        let mut remaining = roots;
        // pair numeric roots into integer quadratic factors
        'outer: loop {
            for i in 0..remaining.len() {
                for j in i + 1..remaining.len() {
                    let (r1, r2) = (remaining[i], remaining[j]);
                    let p = (-(r1 + r2)).round() as i64;
                    let q = (r1 * r2).round() as i64;
                    // rounding alone can land on a divisor whose roots are elsewhere
                    if (r1 + r2 + p as f64).abs() > 1e-6 || (r1 * r2 - q as f64).abs() > 1e-6 {
                        continue;
                    }
                    let quad = IntPoly::from_i64(&[q, p, 1]);
                    if let Some(rest) = h.exact_div_monic(&quad) {
                        h = rest;
                        for sign in [1i8, -1] {
                            let e = ExactValue::quadratic_root(p, q, sign);
                            entries.push(SpectrumEntry {
                                value: decimal(e.to_f64()),
                                exact: Some(e),
                                mult,
                            });
                        }
                        remaining.remove(j);
                        remaining.remove(i);
                        continue 'outer;
                    }
                }
            }
            break;
        }
        for x in remaining {
            entries.push(SpectrumEntry {
                value: decimal(x),
                exact: None,
                mult,
            });
        }
    }
    entries.sort_by(|a, b| b.approx().partial_cmp(&a.approx()).unwrap());
    entries
}

/// `det(xI - A)` written as a product of integer linear and quadratic
/// factors, e.g. `(x-8)(x-2)^5(x^2+2x-4)^6`, when it splits that way.
/// Linear factors come first by decreasing root, then quadratics by
/// decreasing larger root. The product is re-expanded and compared with the
/// characteristic polynomial before returning.
pub fn factored_char_poly(g: &Graph) -> Option<String> {
    let report = spectrum_report(g);
    let mut linear: Vec<(i64, usize)> = Vec::new();
    let mut quadratic: Vec<(f64, IntPoly, usize)> = Vec::new();
    for e in &report {
        let x = e.exact.as_ref()?;
        if x.b == 0 {
            linear.push((x.a, e.mult));
        } else if x.sign > 0 {
            // roots (a ± √b)/c: x^2 - (2a/c)x + (a^2 - b)/c^2
            let (p, q) = (-2 * x.a / x.c, (x.a * x.a - x.b) / (x.c * x.c));
            quadratic.push((x.to_f64(), IntPoly::from_i64(&[q, p, 1]), e.mult));
        }
    }
    let mut product = IntPoly::one();
    let mut text = String::new();
    let mut push = |f: &IntPoly, mult: usize, text: &mut String| {
        product = product.mul(&f.pow(mult));
        text.push('(');
        text.push_str(&f.to_string().replace(' ', ""));
        text.push(')');
        if mult > 1 {
            text.push_str(&format!("^{mult}"));
        }
    };
    for (r, m) in linear {
        push(&IntPoly::linear(r), m, &mut text);
    }
    for (_, f, m) in quadratic {
        push(&f, m, &mut text);
    }
    (&product == char_poly(g).poly()).then_some(text)
}

fn remove_near(values: &mut Vec<f64>, x: f64, count: usize) {
    for _ in 0..count {
        if let Some(i) = values
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - x).abs().partial_cmp(&(b.1 - x).abs()).unwrap())
            .map(|(i, _)| i)
        {
            values.remove(i);
        }
    }
}

fn newton_step(h: &IntPoly, x: f64) -> f64 {
    let d = h.derivative().eval_f64(x);
    (h.eval_f64(x) / d).abs()
}

fn polish(h: &IntPoly, mut x: f64) -> f64 {
    let dh = h.derivative();
    for _ in 0..4 {
        let d = dh.eval_f64(x);
        if d == 0.0 {
            break;
        }
        let step = h.eval_f64(x) / d;
        if !step.is_finite() || step.abs() > 1e-6 {
            break;
        }
        x -= step;
    }
    x
}

/// Exact determinant of the adjacency matrix, for cross-checks.
pub fn adjacency_determinant(g: &Graph) -> BigInt {
    let v = g.order();
    bareiss_determinant(
        (0..v)
            .map(|i| {
                (0..v)
                    .map(|j| BigInt::from(g.is_adjacent(i, j) as i64))
                    .collect()
            })
            .collect(),
    )
}

/// Formats a BigInt coefficient vector compactly for reports.
pub fn coefficient_strings(cp: &CharPoly) -> Vec<String> {
    cp.coeffs().iter().map(|c| c.to_string()).collect()
}
