//! Binary forms in (t1, t0) with cyclotomic coefficients, stored from the
//! t1^d coefficient down to t0^d.

use std::collections::BTreeSet;

use crate::cyclo::{CycloError, CycloNum};
use crate::group::{P1Point, Pgl2Elem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Form {
    pub coeffs: Vec<CycloNum>,
}

impl Form {
    pub fn constant(c: CycloNum) -> Self {
        Form { coeffs: vec![c] }
    }

    /// α t1 + β t0
    pub fn linear(alpha: CycloNum, beta: CycloNum) -> Self {
        Form {
            coeffs: vec![alpha, beta],
        }
    }

    /// The linear form vanishing at p: p0 t1 - p1 t0.
    pub fn vanishing_at(p: &P1Point) -> Self {
        let (p1, p0) = p.coords();
        Form::linear(p0.clone(), -p1)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn conductor(&self) -> u32 {
        self.coeffs[0].conductor()
    }

    pub fn mul(&self, o: &Form) -> Form {
        let n = self.conductor();
        let mut out = vec![CycloNum::zero(n); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in o.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] = &out[i + j] + &(x * y);
                }
            }
        }
        Form { coeffs: out }
    }

    pub fn pow(&self, e: u32) -> Form {
        let mut acc = Form::constant(CycloNum::one(self.conductor()));
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &CycloNum) -> Form {
        Form {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn eval(&self, p: &P1Point) -> CycloNum {
        let (x1, x0) = p.coords();
        // Horner in both variables
        let mut acc = CycloNum::zero(self.conductor());
        let mut p0 = CycloNum::one(self.conductor());
        for c in &self.coeffs {
            acc = &(&acc * x1) + &(c * &p0);
            p0 = &p0 * x0;
        }
        acc
    }

    /// Scaled so the first nonzero coefficient is 1.
    pub fn normalized(&self) -> Result<Form, CycloError> {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            Some(lead) => Ok(self.scale(&lead.inv()?)),
            None => Ok(self.clone()),
        }
    }

    /// ℓ ∘ h^{-1} for a linear form ℓ.
    pub fn linear_transform(&self, h: &Pgl2Elem) -> Form {
        assert_eq!(self.degree(), 1);
        let [a, b, c, d] = h.inv().entries().clone();
        let (al, be) = (&self.coeffs[0], &self.coeffs[1]);
        Form::linear(&(al * &a) + &(be * &c), &(al * &b) + &(be * &d))
    }

    /// Product of ℓ ∘ h^{-1} over the listed elements, normalized. Computed
    /// as the product over the orbit of the zero of ℓ, to the power of the
    /// stabilizer order.
    pub fn orbit_product(&self, elems: &[Pgl2Elem]) -> Result<Form, CycloError> {
        assert_eq!(self.degree(), 1);
        let zero = P1Point::new(-&self.coeffs[1], self.coeffs[0].clone())
            .map_err(|_| CycloError::ZeroInverse)?;
        let orbit: BTreeSet<P1Point> = elems.iter().map(|h| h.apply(&zero)).collect();
        let mut acc = Form::constant(CycloNum::one(self.conductor()));
        for x in &orbit {
            let lin = match x.coordinate() {
                Some(t) => Form::linear(CycloNum::one(self.conductor()), -t),
                None => Form::linear(CycloNum::zero(self.conductor()), CycloNum::one(self.conductor())),
            };
            acc = acc.mul(&lin);
        }
        acc.pow((elems.len() / orbit.len()) as u32).normalized()
    }

    pub fn to_text(&self, var: &str) -> String {
        let d = self.degree();
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mono = match (d - i, i) {
                (0, 0) => String::new(),
                (a, 0) => pw("t1", a),
                (0, b) => pw("t0", b),
                (a, b) => format!("{}*{}", pw("t1", a), pw("t0", b)),
            };
            let cs = c.to_string();
            terms.push(match (mono.is_empty(), cs.as_str()) {
                (true, _) => format!("({cs})"),
                (false, "1") => mono,
                _ => format!("({cs})*{mono}"),
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        format!("{var}*({})", terms.join(" + "))
    }
}

fn pw(v: &str, e: usize) -> String {
    if e == 1 {
        v.to_string()
    } else {
        format!("{v}^{e}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c2_orbit_product_is_even() {
        let n = 4;
        let g = Pgl2Elem::from_ints(n, -1, 0, 0, 1).unwrap();
        let elems = vec![Pgl2Elem::identity(n), g];
        let l = Form::linear(CycloNum::one(n), CycloNum::from_int(n, -3));
        let f = l.orbit_product(&elems).unwrap();
        // (t1 - 3 t0)(t1 + 3 t0) up to sign
        assert_eq!(
            f.coeffs,
            vec![CycloNum::one(n), CycloNum::zero(n), CycloNum::from_int(n, -9)]
        );
        let p = P1Point::affine(CycloNum::from_int(n, 3));
        assert!(f.eval(&p).is_zero());
    }
}
