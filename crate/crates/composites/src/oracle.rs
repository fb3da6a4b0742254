//! Brute-force oracles for the fast classifiers.
//!
//! These deliberately share no logic with [`crate::classify`]: units are
//! found by exhaustive search for an inverse, irreducibility by exhaustive
//! search for a nonunit factor pair. They only work over finite top
//! domains and exist so the theorem-backed procedures can be checked
//! against ground truth at desk scale.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use num_rational::BigRational;

use crate::classify::is_unit_composite;
use crate::composite::{CompositeKind, CompositeSpec};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// Enumeration guard: specs with more members than this are refused.
const MEMBER_CAP: u128 = 4_000_000;

/// Every member of the composite with degree at most `degree_bound`,
/// in a deterministic order.
pub fn enumerate_members(spec: &CompositeSpec, degree_bound: u64) -> Result<Vec<Poly>> {
    let top = spec.top();
    if !top.is_finite() {
        return Err(Error::InfiniteDomain(top.to_string()));
    }
    let filter_membership = spec.kind() == CompositeKind::Iba;
    let mut slots: Vec<Vec<Scalar>> = Vec::new();
    let mut total: u128 = 1;
    for i in 0..=(degree_bound as usize) {
        let slot = if filter_membership { top.clone() } else { spec.slot_domain(i).clone() };
        let elems = slot
            .elements()?
            .into_iter()
            .map(|e| e.coerce(top))
            .collect::<Result<Vec<_>>>()?;
        total = total.saturating_mul(elems.len() as u128);
        if total > MEMBER_CAP {
            return Err(Error::SearchSpaceTooLarge(format!(
                "more than {MEMBER_CAP} coefficient tuples up to degree {degree_bound}"
            )));
        }
        slots.push(elems);
    }
    let mut out = Vec::new();
    let mut idx = vec![0usize; slots.len()];
    loop {
        let mut f = Poly::zero(top);
        for (i, &pick) in idx.iter().enumerate() {
            f = f.add(&Poly::monomial(
                BigRational::from_integer(BigInt::from(i)),
                slots[i][pick].clone(),
            )?)?;
        }
        if !filter_membership || spec.is_member(&f)? {
            out.push(f);
        }
        let mut pos = 0;
        loop {
            if pos == idx.len() {
                return Ok(out);
            }
            idx[pos] += 1;
            if idx[pos] < slots[pos].len() {
                break;
            }
            idx[pos] = 0;
            pos += 1;
        }
    }
}

/// Ground-truth unit test: searches every member `g` of degree at most
/// `degree_bound` for `f·g = 1`.
pub fn unit_oracle(f: &Poly, spec: &CompositeSpec, degree_bound: u64) -> Result<bool> {
    let f = f.coerce(spec.top())?;
    for g in enumerate_members(spec, degree_bound)? {
        if f.mul(&g)?.is_one() {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Ground-truth irreducibility test: searches for nonunit members `g, h`
/// with `g·h = f`. Units and zero are not valid inputs and yield
/// [`Error::NotApplicable`].
///
/// Over a field top domain the search divides `f` by every candidate of
/// degree up to ⌊deg f / 2⌋ (one of any factor pair lands there); over a
/// non-field top, where degrees can collapse, it enumerates whole pairs up
/// to `degree_bound` each.
pub fn irreducible_composite_oracle(
    f: &Poly,
    spec: &CompositeSpec,
    degree_bound: u64,
) -> Result<bool> {
    let top = spec.top();
    if !top.is_finite() {
        return Err(Error::InfiniteDomain(top.to_string()));
    }
    let f = f.coerce(top)?;
    if f.is_zero() || is_unit_composite(&f, spec)? {
        return Err(Error::NotApplicable(
            "irreducibility is asked of nonzero nonunits only".into(),
        ));
    }
    if top.is_field() {
        let deg = f
            .degree()
            .expect("nonzero")
            .to_integer()
            .to_u64()
            .ok_or_else(|| Error::SearchSpaceTooLarge("degree".into()))?;
        let half = std::cmp::min(degree_bound, deg / 2);
        if deg >= 1 && half == 0 {
            return Ok(true);
        }
        for g in enumerate_members(spec, half)? {
            if g.is_zero() || is_unit_composite(&g, spec)? {
                continue;
            }
            let (h, rem) = f.div_rem(&g)?;
            if rem.is_zero() && spec.is_member(&h)? && !is_unit_composite(&h, spec)? {
                return Ok(false);
            }
        }
        Ok(true)
    } else {
        let members = enumerate_members(spec, degree_bound)?;
        let nonunits: Vec<&Poly> = members
            .iter()
            .filter(|g| !g.is_zero())
            .filter(|g| !is_unit_composite(g, spec).unwrap_or(false))
            .collect();
        for g in &nonunits {
            for h in &nonunits {
                if g.mul(h)? == f {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
