//! Closed forms for abelian groups: with trivial action the tensor square is
//! the integral tensor product and the exterior square the alternating
//! square, so for invariants `d_1 | ... | d_k` the factors are
//! `gcd(d_i, d_j)` over ordered pairs, respectively pairs `i < j`.

use num_integer::Integer;

use crate::error::Result;
use crate::group::{Elem, FiniteGroup};
use crate::snf::chain_from_cyclic_factors;

#[derive(Clone, Debug)]
pub struct AbelianOracle {
    pub invariants: Vec<u64>,
    pub tensor: Vec<u64>,
    pub exterior: Vec<u64>,
    coords: Vec<Vec<i64>>,
}

impl AbelianOracle {
    pub fn tensor_order(&self) -> u64 {
        self.tensor.iter().product()
    }

    pub fn exterior_order(&self) -> u64 {
        self.exterior.iter().product()
    }

    /// Coordinates of `x ∧ y` in `⊕_{i<j} Z/gcd(d_i, d_j)`:
    /// `x_i y_j - x_j y_i`.
    pub fn wedge_form(&self, x: Elem, y: Elem) -> Vec<i64> {
        let (a, b) = (&self.coords[x as usize], &self.coords[y as usize]);
        let k = self.invariants.len();
        let mut out = Vec::new();
        for i in 0..k {
            for j in i + 1..k {
                let m = self.invariants[i].gcd(&self.invariants[j]) as i64;
                out.push((a[i] * b[j] - a[j] * b[i]).rem_euclid(m));
            }
        }
        out
    }

    pub fn wedge_is_trivial(&self, x: Elem, y: Elem) -> bool {
        self.wedge_form(x, y).iter().all(|&c| c == 0)
    }
}

pub fn abelian_exterior_oracle(a: &FiniteGroup) -> Result<AbelianOracle> {
    let (inv, coords) = a.abelian_coordinates()?;
    let d = &inv.torsion;
    let mut tensor = Vec::new();
    let mut exterior = Vec::new();
    for (i, x) in d.iter().enumerate() {
        for (j, y) in d.iter().enumerate() {
            tensor.push(x.gcd(y));
            if i < j {
                exterior.push(x.gcd(y));
            }
        }
    }
    Ok(AbelianOracle {
        invariants: d.clone(),
        tensor: chain_from_cyclic_factors(&tensor)?,
        exterior: chain_from_cyclic_factors(&exterior)?,
        coords,
    })
}
