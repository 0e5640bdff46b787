//! Parsers for polynomials written the way they appear in printed tables,
//! e.g. "q^3 + 2q^2 + 3q" or "q1^2 q2 + 3 q1 + 1".

use pipehopf::linear::{Integer, IntPoly, IntPoly2};

/// Exponents of (q or q1, q2) and the coefficient of one monomial.
fn monomial(term: &str) -> (usize, usize, i64) {
    let chars: Vec<char> = term.chars().filter(|c| !c.is_whitespace()).collect();
    let mut pos = 0;
    let number = |pos: &mut usize| -> Option<usize> {
        let start = *pos;
        while *pos < chars.len() && chars[*pos].is_ascii_digit() {
            *pos += 1;
        }
        (start < *pos).then(|| chars[start..*pos].iter().collect::<String>().parse().unwrap())
    };
    let coefficient = number(&mut pos).unwrap_or(1) as i64;
    let (mut e1, mut e2) = (0, 0);
    while pos < chars.len() {
        assert_eq!(chars[pos], 'q', "bad term {term:?}");
        pos += 1;
        let second = match chars.get(pos) {
            Some('1') => {
                pos += 1;
                false
            }
            Some('2') => {
                pos += 1;
                true
            }
            _ => false,
        };
        let exponent = if chars.get(pos) == Some(&'^') {
            pos += 1;
            number(&mut pos).expect("exponent")
        } else {
            1
        };
        if second {
            e2 += exponent;
        } else {
            e1 += exponent;
        }
    }
    (e1, e2, coefficient)
}

fn terms(text: &str) -> impl Iterator<Item = (usize, usize, i64)> + '_ {
    text.split('+').map(str::trim).filter(|t| !t.is_empty()).map(monomial)
}

pub fn poly(text: &str) -> IntPoly {
    let mut out = IntPoly::zero();
    for (e1, e2, c) in terms(text) {
        assert_eq!(e2, 0, "univariate polynomial expected: {text:?}");
        out.add_monomial(e1, &Integer::from(c));
    }
    out
}

pub fn poly2(text: &str) -> IntPoly2 {
    let mut out = IntPoly2::zero();
    for (e1, e2, c) in terms(text) {
        out.add_monomial(e1, e2, &Integer::from(c));
    }
    out
}

#[allow(dead_code)]
pub fn int(value: i64) -> Integer {
    Integer::from(value)
}
