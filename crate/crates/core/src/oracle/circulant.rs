use std::fmt;

use crate::error::{Error, Result};
use crate::params::GroupParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CirculantEntry {
    Zero,
    One,
    MinusX,
    MinusY,
}

impl fmt::Display for CirculantEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CirculantEntry::Zero => "0",
            CirculantEntry::One => "1",
            CirculantEntry::MinusX => "-x",
            CirculantEntry::MinusY => "-y",
        })
    }
}

/// `circ(d_1, ..., d_p)` with `d_1 = 1`, `d_{q1+1} = -x`, `d_{q2+1} = -y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CirculantSpec {
    params: GroupParams,
    first_row: Vec<CirculantEntry>,
}

/// Checks `1 <= q1 < q2 < p`, the range where step labels are unambiguous.
pub(crate) fn require_distinct_steps(params: &GroupParams) -> Result<()> {
    let (q1, q2) = (params.q1(), params.q2());
    if q1 == 0 {
        return Err(Error::Unsupported("q1 = 0: fixed points and q1-steps coincide".into()));
    }
    if q1 >= q2 {
        return Err(Error::Unsupported(format!(
            "need q1 < q2 so q1- and q2-steps are distinguishable (got q1={q1}, q2={q2})"
        )));
    }
    Ok(())
}

pub fn circulant_spec(params: &GroupParams) -> Result<CirculantSpec> {
    require_distinct_steps(params)?;
    let p = params.p() as usize;
    let mut first_row = vec![CirculantEntry::Zero; p];
    first_row[0] = CirculantEntry::One;
    first_row[params.q1() as usize] = CirculantEntry::MinusX;
    first_row[params.q2() as usize] = CirculantEntry::MinusY;
    Ok(CirculantSpec { params: *params, first_row })
}

impl CirculantSpec {
    pub fn params(&self) -> &GroupParams {
        &self.params
    }

    pub fn size(&self) -> usize {
        self.first_row.len()
    }

    pub fn first_row(&self) -> &[CirculantEntry] {
        &self.first_row
    }

    /// Entry at 0-based `(row, col)`: row `i` is the first row rotated right by `i`.
    pub fn entry(&self, row: usize, col: usize) -> CirculantEntry {
        let p = self.size();
        self.first_row[(col + p - row % p) % p]
    }

    pub fn row(&self, row: usize) -> Vec<CirculantEntry> {
        (0..self.size()).map(|c| self.entry(row, c)).collect()
    }
}

impl fmt::Display for CirculantSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.size() {
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use CirculantEntry::*;

    #[test]
    fn six_two_three_matrix() {
        let c = circulant_spec(&GroupParams::definite(6, 2, 3).unwrap()).unwrap();
        assert_eq!(c.first_row(), &[One, Zero, MinusX, MinusY, Zero, Zero]);
        assert_eq!(c.row(3), vec![MinusY, Zero, Zero, One, Zero, MinusX]);
        assert_eq!(c.row(4), vec![MinusX, MinusY, Zero, Zero, One, Zero]);
    }

    #[test]
    fn five_one_two_row() {
        let c = circulant_spec(&GroupParams::definite(5, 1, 2).unwrap()).unwrap();
        assert_eq!(c.first_row(), &[One, MinusX, MinusY, Zero, Zero]);
    }

    #[test]
    fn rejects_colliding_steps() {
        assert!(circulant_spec(&GroupParams::indefinite(2, 1, 1).unwrap()).is_err());
        assert!(circulant_spec(&GroupParams::definite(5, 0, 2).unwrap()).is_err());
        assert!(circulant_spec(&GroupParams::indefinite(5, 3, 1).unwrap()).is_err());
    }
}
