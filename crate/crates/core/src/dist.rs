//! Finite probability tables over one, two and three variables.

use crate::error::InfoError;
use crate::scalar::Real;
use std::collections::HashSet;

/// An ordered list of unique symbol labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet(Vec<String>);

impl Alphabet {
    pub fn new<I, S>(symbols: I) -> Result<Self, InfoError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let symbols: Vec<String> = symbols.into_iter().map(Into::into).collect();
        if symbols.is_empty() {
            return Err(InfoError::EmptyAlphabet);
        }
        let mut seen = HashSet::with_capacity(symbols.len());
        for s in &symbols {
            if !seen.insert(s.as_str()) {
                return Err(InfoError::DuplicateSymbol(s.clone()));
            }
        }
        Ok(Alphabet(symbols))
    }

    /// Symbols `"0"`, `"1"`, ..., `"n-1"`.
    pub fn indexed(n: usize) -> Self {
        assert!(n > 0, "alphabet must be nonempty");
        Alphabet((0..n).map(|i| i.to_string()).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbols(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, symbol: &str) -> Option<usize> {
        self.0.iter().position(|s| s == symbol)
    }

    pub fn symbol(&self, index: usize) -> &str {
        &self.0[index]
    }
}

/// Checks a probability table and renormalizes small accumulation error in place.
fn validate_table<F: Real>(table: &mut [F]) -> Result<(), InfoError> {
    let mut sum = F::zero();
    for (index, &p) in table.iter().enumerate() {
        if !p.is_finite() || p < F::zero() {
            return Err(InfoError::InvalidProbability {
                index,
                value: p.to_f64().unwrap_or(f64::NAN),
            });
        }
        sum = sum + p;
    }
    let tolerance = F::renormalize_tolerance();
    if (sum - F::one()).abs() > tolerance {
        return Err(InfoError::NotNormalized {
            sum: sum.to_f64().unwrap_or(f64::NAN),
            tolerance: tolerance.to_f64().unwrap_or(f64::NAN),
        });
    }
    if sum != F::one() {
        for p in table.iter_mut() {
            *p = *p / sum;
        }
    }
    Ok(())
}

fn check_shape(expected: usize, got: usize) -> Result<(), InfoError> {
    if expected == got {
        Ok(())
    } else {
        Err(InfoError::ShapeMismatch { expected, got })
    }
}

/// A probability mass function on a finite alphabet.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteDist<F> {
    support: Alphabet,
    probs: Vec<F>,
}

impl<F: Real> DiscreteDist<F> {
    pub fn new(support: Alphabet, mut probs: Vec<F>) -> Result<Self, InfoError> {
        check_shape(support.len(), probs.len())?;
        validate_table(&mut probs)?;
        Ok(DiscreteDist { support, probs })
    }

    /// Distribution on the indexed alphabet `0..probs.len()`.
    pub fn from_probs(probs: Vec<F>) -> Result<Self, InfoError> {
        if probs.is_empty() {
            return Err(InfoError::EmptyAlphabet);
        }
        Self::new(Alphabet::indexed(probs.len()), probs)
    }

    pub fn uniform(n: usize) -> Self {
        let p = F::one() / F::from_usize(n).expect("alphabet size");
        DiscreteDist {
            support: Alphabet::indexed(n),
            probs: vec![p; n],
        }
    }

    pub(crate) fn from_valid(support: Alphabet, probs: Vec<F>) -> Self {
        DiscreteDist { support, probs }
    }

    pub fn support(&self) -> &Alphabet {
        &self.support
    }

    pub fn probs(&self) -> &[F] {
        &self.probs
    }

    pub fn prob(&self, symbol: &str) -> Option<F> {
        self.support.index_of(symbol).map(|i| self.probs[i])
    }
}

/// Joint distribution of two variables, stored row-major as `table[x * ny + y]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteJoint2<F> {
    alphabet_x: Alphabet,
    alphabet_y: Alphabet,
    table: Vec<F>,
}

impl<F: Real> DiscreteJoint2<F> {
    pub fn new(alphabet_x: Alphabet, alphabet_y: Alphabet, mut table: Vec<F>) -> Result<Self, InfoError> {
        check_shape(alphabet_x.len() * alphabet_y.len(), table.len())?;
        validate_table(&mut table)?;
        Ok(DiscreteJoint2 {
            alphabet_x,
            alphabet_y,
            table,
        })
    }

    /// Table over indexed alphabets of the given sizes.
    pub fn from_table(nx: usize, ny: usize, table: Vec<F>) -> Result<Self, InfoError> {
        Self::new(Alphabet::indexed(nx), Alphabet::indexed(ny), table)
    }

    /// Product distribution `p(x) q(y)`.
    pub fn independent(px: &DiscreteDist<F>, py: &DiscreteDist<F>) -> Self {
        let table = px
            .probs()
            .iter()
            .flat_map(|&a| py.probs().iter().map(move |&b| a * b))
            .collect();
        DiscreteJoint2 {
            alphabet_x: px.support().clone(),
            alphabet_y: py.support().clone(),
            table,
        }
    }

    pub(crate) fn from_valid(alphabet_x: Alphabet, alphabet_y: Alphabet, table: Vec<F>) -> Self {
        DiscreteJoint2 {
            alphabet_x,
            alphabet_y,
            table,
        }
    }

    pub fn alphabet_x(&self) -> &Alphabet {
        &self.alphabet_x
    }

    pub fn alphabet_y(&self) -> &Alphabet {
        &self.alphabet_y
    }

    pub fn nx(&self) -> usize {
        self.alphabet_x.len()
    }

    pub fn ny(&self) -> usize {
        self.alphabet_y.len()
    }

    pub fn table(&self) -> &[F] {
        &self.table
    }

    pub fn p(&self, x: usize, y: usize) -> F {
        self.table[x * self.ny() + y]
    }

    pub fn marginal_x(&self) -> DiscreteDist<F> {
        DiscreteDist::from_valid(self.alphabet_x.clone(), row_sums(&self.table, self.nx(), self.ny()))
    }

    pub fn marginal_y(&self) -> DiscreteDist<F> {
        DiscreteDist::from_valid(self.alphabet_y.clone(), col_sums(&self.table, self.nx(), self.ny()))
    }

    /// The same joint with the roles of X and Y exchanged.
    pub fn transposed(&self) -> Self {
        let (nx, ny) = (self.nx(), self.ny());
        let mut table = vec![F::zero(); nx * ny];
        for x in 0..nx {
            for y in 0..ny {
                table[y * nx + x] = self.table[x * ny + y];
            }
        }
        DiscreteJoint2::from_valid(self.alphabet_y.clone(), self.alphabet_x.clone(), table)
    }
}

pub(crate) fn row_sums<F: Real>(table: &[F], nx: usize, ny: usize) -> Vec<F> {
    (0..nx).map(|x| table[x * ny..(x + 1) * ny].iter().copied().sum()).collect()
}

pub(crate) fn col_sums<F: Real>(table: &[F], nx: usize, ny: usize) -> Vec<F> {
    let mut out = vec![F::zero(); ny];
    for x in 0..nx {
        for (y, acc) in out.iter_mut().enumerate() {
            *acc = *acc + table[x * ny + y];
        }
    }
    out
}

/// Which variable of a trivariate joint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X = 0,
    Y = 1,
    T = 2,
}

/// Joint distribution of predictors X, Y and target T, stored as
/// `table[(x * ny + y) * nt + t]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteJoint3<F> {
    alphabet_x: Alphabet,
    alphabet_y: Alphabet,
    alphabet_t: Alphabet,
    table: Vec<F>,
}

impl<F: Real> DiscreteJoint3<F> {
    pub fn new(
        alphabet_x: Alphabet,
        alphabet_y: Alphabet,
        alphabet_t: Alphabet,
        mut table: Vec<F>,
    ) -> Result<Self, InfoError> {
        check_shape(alphabet_x.len() * alphabet_y.len() * alphabet_t.len(), table.len())?;
        validate_table(&mut table)?;
        Ok(DiscreteJoint3 {
            alphabet_x,
            alphabet_y,
            alphabet_t,
            table,
        })
    }

    pub fn from_table(nx: usize, ny: usize, nt: usize, table: Vec<F>) -> Result<Self, InfoError> {
        Self::new(Alphabet::indexed(nx), Alphabet::indexed(ny), Alphabet::indexed(nt), table)
    }

    /// Builds the table by evaluating `f(x, y, t)` on every index triple.
    pub fn from_fn(
        nx: usize,
        ny: usize,
        nt: usize,
        mut f: impl FnMut(usize, usize, usize) -> F,
    ) -> Result<Self, InfoError> {
        let mut table = Vec::with_capacity(nx * ny * nt);
        for x in 0..nx {
            for y in 0..ny {
                for t in 0..nt {
                    table.push(f(x, y, t));
                }
            }
        }
        Self::from_table(nx, ny, nt, table)
    }

    pub fn alphabet(&self, axis: Axis) -> &Alphabet {
        match axis {
            Axis::X => &self.alphabet_x,
            Axis::Y => &self.alphabet_y,
            Axis::T => &self.alphabet_t,
        }
    }

    pub fn shape(&self) -> (usize, usize, usize) {
        (self.alphabet_x.len(), self.alphabet_y.len(), self.alphabet_t.len())
    }

    pub fn table(&self) -> &[F] {
        &self.table
    }

    pub fn p(&self, x: usize, y: usize, t: usize) -> F {
        let (_, ny, nt) = self.shape();
        self.table[(x * ny + y) * nt + t]
    }

    pub fn marginal(&self, axis: Axis) -> DiscreteDist<F> {
        let (nx, ny, nt) = self.shape();
        let n = [nx, ny, nt][axis as usize];
        let mut out = vec![F::zero(); n];
        for x in 0..nx {
            for y in 0..ny {
                for t in 0..nt {
                    let i = [x, y, t][axis as usize];
                    out[i] = out[i] + self.p(x, y, t);
                }
            }
        }
        DiscreteDist::from_valid(self.alphabet(axis).clone(), out)
    }

    /// Two-variable marginal over `(first, second)`, in that order.
    pub fn pair(&self, first: Axis, second: Axis) -> DiscreteJoint2<F> {
        assert_ne!(first, second, "pair marginal needs two distinct axes");
        let (nx, ny, nt) = self.shape();
        let dims = [nx, ny, nt];
        let (n1, n2) = (dims[first as usize], dims[second as usize]);
        let mut out = vec![F::zero(); n1 * n2];
        for x in 0..nx {
            for y in 0..ny {
                for t in 0..nt {
                    let idx = [x, y, t];
                    let cell = idx[first as usize] * n2 + idx[second as usize];
                    out[cell] = out[cell] + self.p(x, y, t);
                }
            }
        }
        DiscreteJoint2::from_valid(
            self.alphabet(first).clone(),
            self.alphabet(second).clone(),
            out,
        )
    }

    /// The joint of the compound source (X, Y) against T. Compound symbols are `"x,y"`.
    pub fn sources_vs_target(&self) -> DiscreteJoint2<F> {
        let (nx, ny, _) = self.shape();
        let mut symbols = Vec::with_capacity(nx * ny);
        for x in self.alphabet_x.symbols() {
            for y in self.alphabet_y.symbols() {
                symbols.push(format!("{x},{y}"));
            }
        }
        // "x,y" may collide when symbols themselves contain commas; fall back to indices.
        let compound = Alphabet::new(symbols).unwrap_or_else(|_| Alphabet::indexed(nx * ny));
        DiscreteJoint2::from_valid(compound, self.alphabet_t.clone(), self.table.clone())
    }

    /// Reorders the variables: axis `k` of the result is axis `order[k]` of `self`.
    pub fn permuted(&self, order: [Axis; 3]) -> Self {
        let mut seen = [false; 3];
        for a in order {
            seen[a as usize] = true;
        }
        assert!(seen.iter().all(|&s| s), "order must be a permutation");
        let (nx, ny, nt) = self.shape();
        let dims = [nx, ny, nt];
        let nd = [dims[order[0] as usize], dims[order[1] as usize], dims[order[2] as usize]];
        let mut out = vec![F::zero(); nx * ny * nt];
        for x in 0..nx {
            for y in 0..ny {
                for t in 0..nt {
                    let idx = [x, y, t];
                    let (a, b, c) = (idx[order[0] as usize], idx[order[1] as usize], idx[order[2] as usize]);
                    out[(a * nd[1] + b) * nd[2] + c] = self.p(x, y, t);
                }
            }
        }
        DiscreteJoint3 {
            alphabet_x: self.alphabet(order[0]).clone(),
            alphabet_y: self.alphabet(order[1]).clone(),
            alphabet_t: self.alphabet(order[2]).clone(),
            table: out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renormalizes_small_drift_and_rejects_large() {
        let d = DiscreteDist::<f64>::from_probs(vec![0.5, 0.5 + 5e-10]).unwrap();
        let s: f64 = d.probs().iter().sum();
        assert!((s - 1.0).abs() < 1e-15);
        let err = DiscreteDist::<f64>::from_probs(vec![0.5, 0.4]).unwrap_err();
        assert!(matches!(err, InfoError::NotNormalized { .. }));
    }

    #[test]
    fn rejects_negative_and_nan() {
        assert!(matches!(
            DiscreteDist::<f64>::from_probs(vec![1.5, -0.5]),
            Err(InfoError::InvalidProbability { index: 1, .. })
        ));
        assert!(DiscreteDist::<f64>::from_probs(vec![f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn rejects_duplicate_symbols_and_bad_shape() {
        assert_eq!(
            Alphabet::new(["a", "b", "a"]).unwrap_err(),
            InfoError::DuplicateSymbol("a".into())
        );
        assert!(matches!(
            DiscreteJoint2::<f64>::from_table(2, 2, vec![1.0]),
            Err(InfoError::ShapeMismatch { expected: 4, got: 1 })
        ));
    }

    #[test]
    fn marginals_and_pairs() {
        // p(x,y,t) = [x==t] * 1/4 over binary x, y
        let j = DiscreteJoint3::<f64>::from_fn(2, 2, 2, |x, _, t| if x == t { 0.25 } else { 0.0 }).unwrap();
        assert_eq!(j.marginal(Axis::T).probs(), &[0.5, 0.5]);
        let xt = j.pair(Axis::X, Axis::T);
        assert_eq!(xt.table(), &[0.5, 0.0, 0.0, 0.5]);
        let tx = j.pair(Axis::T, Axis::X);
        assert_eq!(tx, xt.transposed());
        let yt = j.pair(Axis::Y, Axis::T);
        assert_eq!(yt.table(), &[0.25; 4]);
    }

    #[test]
    fn permutation_round_trip() {
        let j = DiscreteJoint3::<f64>::from_fn(2, 3, 4, |x, y, t| (1 + x + 2 * y + 6 * t) as f64 / 300.0).unwrap();
        let p = j.permuted([Axis::T, Axis::X, Axis::Y]);
        assert_eq!(p.shape(), (4, 2, 3));
        assert_eq!(p.p(3, 1, 2), j.p(1, 2, 3));
        let back = p.permuted([Axis::Y, Axis::T, Axis::X]);
        assert_eq!(back, j);
    }
}
