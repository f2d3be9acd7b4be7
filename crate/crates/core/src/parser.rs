//! Polynomial expressions in `X1..Xr`.
//!
//! ```text
//! expr     := '-'? term (('+' | '-') term)*
//! term     := factor ('*' factor)*
//! factor   := rational | variable ('^' nat)? | '(' expr ')'
//! variable := 'X' nat
//! rational := integer ('/' positive-integer)?
//! ```
//!
//! Whitespace is insignificant. Error positions are 1-based character
//! offsets into the source.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Rational, WeightedPoly};

/// Parses `src` as a polynomial in `X1..X{nvars}`.
pub fn parse_poly(src: &str, nvars: usize) -> Result<WeightedPoly> {
    let mut parser = Parser {
        chars: src.chars().collect(),
        pos: 0,
        nvars,
    };
    let p = parser.expr()?;
    parser.skip_ws();
    if let Some(c) = parser.peek() {
        return Err(parser.syntax(alloc::format!("unexpected '{c}'")));
    }
    Ok(p)
}

/// Canonical rendering; `parse_poly(&render_poly(p), p.nvars()) == p`.
pub fn render_poly(p: &WeightedPoly) -> String {
    p.to_string()
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
    nvars: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn syntax(&self, message: impl Into<String>) -> Error {
        Error::Syntax {
            position: self.pos + 1,
            message: message.into(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<WeightedPoly> {
        let negate = self.eat('-');
        let mut acc = self.term()?;
        if negate {
            acc = -&acc;
        }
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<WeightedPoly> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<WeightedPoly> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.syntax("expected ')'"));
                }
                Ok(inner)
            }
            Some('X') => {
                let start = self.pos;
                self.pos += 1;
                let index = self
                    .nat()?
                    .try_into()
                    .ok()
                    .filter(|&i: &usize| i >= 1 && i <= self.nvars)
                    .ok_or_else(|| Error::Range {
                        position: start + 1,
                        index: self.chars[start + 1..self.pos]
                            .iter()
                            .collect::<String>()
                            .parse()
                            .unwrap_or(usize::MAX),
                        nvars: self.nvars,
                    })?;
                let var = WeightedPoly::variable(self.nvars, index)?;
                if self.eat('^') {
                    self.skip_ws();
                    let e: u32 = self
                        .nat()?
                        .try_into()
                        .map_err(|_| self.syntax("exponent too large"))?;
                    Ok(var.pow(e))
                } else {
                    Ok(var)
                }
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                let value = if self.eat('/') {
                    self.skip_ws();
                    let at = self.pos;
                    let den = self.nat()?;
                    if den.is_zero() {
                        return Err(Error::Syntax {
                            position: at + 1,
                            message: "zero denominator".to_string(),
                        });
                    }
                    Rational::new(num, den)
                } else {
                    Rational::from_integer(num)
                };
                Ok(WeightedPoly::constant(self.nvars, value))
            }
            Some(c) => Err(self.syntax(alloc::format!("unexpected '{c}'"))),
            None => Err(self.syntax("unexpected end of input")),
        }
    }

    fn nat(&mut self) -> Result<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.syntax("expected a number"));
        }
        let digits: String = self.chars[start..self.pos].iter().collect();
        Ok(digits.parse().expect("ascii digits"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{ratio, rational};
    use proptest::prelude::*;

    fn x(i: usize) -> WeightedPoly {
        WeightedPoly::variable(2, i).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(parse_poly("X1^4", 2).unwrap(), x(1).pow(4));
        assert_eq!(
            parse_poly("(X1 - X2)*(X1 + X2)", 2).unwrap(),
            &x(1).pow(2) - &x(2).pow(2)
        );
        assert_eq!(
            parse_poly("X3 + 1", 2),
            Err(Error::Range {
                position: 1,
                index: 3,
                nvars: 2
            })
        );
        assert_eq!(parse_poly("1/3*X1", 2).unwrap(), x(1).scale(&ratio(1, 3)));
        assert_eq!(parse_poly(" -( -X1) ", 2).unwrap(), x(1));
        assert_eq!(
            parse_poly("2/4", 1).unwrap(),
            WeightedPoly::constant(1, ratio(1, 2))
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert!(matches!(
            parse_poly("2X1", 2),
            Err(Error::Syntax { position: 2, .. })
        ));
        assert!(matches!(
            parse_poly("X1 +", 2),
            Err(Error::Syntax { position: 5, .. })
        ));
        assert!(matches!(
            parse_poly("(X1", 2),
            Err(Error::Syntax { position: 4, .. })
        ));
        assert!(matches!(
            parse_poly("1/0", 2),
            Err(Error::Syntax { position: 3, .. })
        ));
        assert!(matches!(
            parse_poly("X0", 2),
            Err(Error::Range {
                position: 1,
                index: 0,
                ..
            })
        ));
        assert!(matches!(
            parse_poly("X1 * -X2", 2),
            Err(Error::Syntax { position: 6, .. })
        ));
        assert!(matches!(
            parse_poly("", 2),
            Err(Error::Syntax { position: 1, .. })
        ));
    }

    #[test]
    fn rendering() {
        assert_eq!(render_poly(&WeightedPoly::zero(2)), "0");
        assert_eq!(render_poly(&(&x(1).pow(2) - &x(2))), "X1^2 - X2");
        let p = x(1).scale(&ratio(-1, 3));
        assert_eq!(parse_poly(&render_poly(&p), 2).unwrap(), p);
    }

    fn arb_poly(nvars: usize) -> impl Strategy<Value = WeightedPoly> {
        let term = (
            proptest::collection::vec(0u32..4, nvars),
            -20i64..20,
            1i64..7,
        );
        proptest::collection::vec(term, 0..6).prop_map(move |terms| {
            WeightedPoly::from_terms(nvars, terms.into_iter().map(|(e, n, d)| (e, ratio(n, d))))
        })
    }

    proptest! {
        #[test]
        fn round_trip(p in arb_poly(3)) {
            let text = render_poly(&p);
            let back = parse_poly(&text, 3).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(render_poly(&back), text);
        }

        #[test]
        fn parse_is_deterministic(p in arb_poly(2)) {
            let text = render_poly(&p);
            prop_assert_eq!(parse_poly(&text, 2), parse_poly(&text, 2));
        }
    }

    #[test]
    fn integer_literal_is_constant() {
        let p = parse_poly("12", 2).unwrap();
        assert_eq!(p.as_constant(), Some(rational(12)));
        assert_eq!(p.coefficient(&[0, 0]), rational(12));
    }
}
