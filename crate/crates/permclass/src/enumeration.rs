//! Exact counting of regular languages by word length.
//!
//! The word counts of a language satisfy a constant-coefficient linear
//! recurrence whose order is at most the state count of the minimal
//! acceptor (the transfer matrix `A`, with entry `(s, t)` counting the
//! letters moving `s` to `t`, gives the power series `N(x)/det(I - xA)`).
//! [`generating_function`] therefore counts twice-state-count terms and
//! fits the shortest recurrence exactly, yielding the lowest-terms rational
//! form directly. All arithmetic is exact: big integers for counts, big
//! rationals inside the fit, and a primitive polynomial gcd for reduction.
//! The fraction-free polynomial [`determinant`] is exposed for the
//! transfer-matrix route, which doubles as an independent oracle in tests.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::automaton::Automaton;

/// A polynomial over the integers, coefficients in ascending powers with no
/// trailing zeros (the zero polynomial stores no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    coeffs: Vec<BigInt>,
}

impl Polynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Polynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Polynomial::from_ints(&[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficients in ascending powers of `x`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial::new((0..len).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, factor: &BigInt) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * factor).collect())
    }

    /// Exact quotient. Panics if `divisor` does not divide `self` in `Z[x]`;
    /// only called where exactness is guaranteed.
    fn div_exact(&self, divisor: &Polynomial) -> Polynomial {
        assert!(!divisor.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut rem = self.coeffs.clone();
        let d = &divisor.coeffs;
        let dl = d.len();
        assert!(rem.len() >= dl, "non-exact polynomial division");
        let lead = &d[dl - 1];
        let mut quot = vec![BigInt::zero(); rem.len() - dl + 1];
        for q_pos in (0..quot.len()).rev() {
            let top = rem[q_pos + dl - 1].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            assert!(r.is_zero(), "non-exact polynomial division");
            for (i, di) in d.iter().enumerate() {
                rem[q_pos + i] -= &q * di;
            }
            quot[q_pos] = q;
        }
        assert!(
            rem.iter().all(BigInt::is_zero),
            "non-exact polynomial division"
        );
        Polynomial::new(quot)
    }

    /// Greatest common divisor of the coefficients (nonnegative).
    fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    fn primitive_part(&self) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let c = self.content();
        Polynomial::new(self.coeffs.iter().map(|x| x / &c).collect())
    }

    /// Remainder of `lc(g)^(deg f - deg g + 1) * f` divided by `g`; every
    /// elimination step is integral.
    fn pseudo_rem(&self, g: &Polynomial) -> Polynomial {
        let df = self.degree().expect("pseudo_rem of zero");
        let dg = g.degree().expect("pseudo_rem by zero");
        assert!(df >= dg);
        let lead = g.coeffs.last().unwrap().clone();
        let mut rem = self.coeffs.clone();
        for pos in (dg..=df).rev() {
            let top = rem[pos].clone();
            for c in rem.iter_mut().take(pos) {
                *c *= &lead;
            }
            for c in rem.iter_mut().skip(pos + 1) {
                *c *= &lead;
            }
            rem[pos] = BigInt::zero();
            for i in 0..dg {
                rem[pos - dg + i] -= &top * &g.coeffs[i];
            }
        }
        rem.truncate(dg);
        Polynomial::new(rem)
    }

    /// Greatest common divisor in `Z[x]` via the primitive remainder
    /// sequence, normalized to a positive leading coefficient.
    pub fn gcd(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return other.normalize_sign();
        }
        if other.is_zero() {
            return self.normalize_sign();
        }
        let content = self.content().gcd(&other.content());
        let mut f = self.primitive_part();
        let mut g = other.primitive_part();
        if f.degree() < g.degree() {
            std::mem::swap(&mut f, &mut g);
        }
        while !g.is_zero() {
            let r = f.pseudo_rem(&g).primitive_part();
            f = g;
            g = r;
        }
        f.normalize_sign().scale(&content)
    }

    fn normalize_sign(&self) -> Polynomial {
        match self.coeffs.last() {
            Some(lead) if lead.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && power > 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{power}")?,
            }
        }
        Ok(())
    }
}

/// Determinant of a square polynomial matrix by Bareiss fraction-free
/// elimination: every division is exact in `Z[x]`.
pub fn determinant(matrix: &[Vec<Polynomial>]) -> Polynomial {
    let n = matrix.len();
    assert!(matrix.iter().all(|row| row.len() == n), "square matrix");
    if n == 0 {
        return Polynomial::one();
    }
    let mut m = matrix.to_vec();
    let mut prev = Polynomial::one();
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return Polynomial::zero();
            };
            m.swap(k, pivot);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let prod = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = prod.div_exact(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// A quotient of integer polynomials, kept reduced. When the denominator's
/// constant term is a unit it is normalized to `1`, so generating functions
/// of word counts expand to integer power series.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGf {
    numerator: Polynomial,
    denominator: Polynomial,
}

impl RationalGf {
    /// Reduces the fraction. Panics on a zero denominator.
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Self {
        assert!(!denominator.is_zero(), "zero denominator");
        let g = numerator.gcd(&denominator);
        let mut num = numerator.div_exact(&g);
        let mut den = denominator.div_exact(&g);
        let unit_constant = den.coeff(0).abs().is_one();
        let flip = if unit_constant {
            den.coeff(0).is_negative()
        } else {
            den.coeffs().last().is_some_and(Signed::is_negative)
        };
        if flip {
            num = num.neg();
            den = den.neg();
        }
        RationalGf {
            numerator: num,
            denominator: den,
        }
    }

    pub fn zero() -> Self {
        RationalGf {
            numerator: Polynomial::zero(),
            denominator: Polynomial::one(),
        }
    }

    pub fn numerator(&self) -> &Polynomial {
        &self.numerator
    }

    pub fn denominator(&self) -> &Polynomial {
        &self.denominator
    }

    /// First `count` coefficients of the power-series expansion. Panics
    /// unless the denominator's constant term is `1` (true of every
    /// generating function produced by [`generating_function`]).
    pub fn series(&self, count: usize) -> Vec<BigInt> {
        assert!(
            self.denominator.coeff(0).is_one(),
            "series needs constant term 1 in the denominator"
        );
        let den = self.denominator.coeffs();
        let mut terms: Vec<BigInt> = Vec::with_capacity(count);
        for n in 0..count {
            let mut acc = self.numerator.coeff(n);
            for i in 1..den.len().min(n + 1) {
                acc -= &den[i] * &terms[n - i];
            }
            terms.push(acc);
        }
        terms
    }

    /// The constant-coefficient linear recurrence satisfied by the series.
    pub fn linear_recurrence(&self) -> LinearRecurrence {
        let order = self.denominator.degree().unwrap_or(0);
        let num_degree_bound = self.numerator.degree().map_or(0, |d| d + 1);
        let valid_from = order.max(num_degree_bound);
        let coefficients = (1..=order).map(|i| -self.denominator.coeff(i)).collect();
        LinearRecurrence {
            coefficients,
            initial_terms: self.series(valid_from),
        }
    }
}

impl fmt::Display for RationalGf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) / ({})", self.numerator, self.denominator)
    }
}

/// `a(n) = sum(coefficients[i-1] * a(n-i), i = 1..=order)` for every
/// `n >= initial_terms.len()`, with the earlier values listed explicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearRecurrence {
    pub coefficients: Vec<BigInt>,
    pub initial_terms: Vec<BigInt>,
}

impl LinearRecurrence {
    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Index from which the recurrence itself is valid.
    pub fn valid_from(&self) -> usize {
        self.initial_terms.len()
    }

    /// First `count` terms, extending the initial segment by the recurrence.
    pub fn expand(&self, count: usize) -> Vec<BigInt> {
        let mut terms = self.initial_terms.clone();
        terms.truncate(count);
        while terms.len() < count {
            let n = terms.len();
            let mut acc = BigInt::zero();
            for (i, c) in self.coefficients.iter().enumerate() {
                acc += c * &terms[n - 1 - i];
            }
            terms.push(acc);
        }
        terms
    }
}

/// Word counts of a language by length, starting at length `0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountSequence {
    terms: Vec<BigUint>,
}

impl CountSequence {
    pub fn terms(&self) -> &[BigUint] {
        &self.terms
    }
}

impl fmt::Display for CountSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for t in &self.terms {
            if !first {
                write!(f, ", ")?;
            }
            write!(f, "{t}")?;
            first = false;
        }
        Ok(())
    }
}

/// Counts the words of exactly the given length by dynamic programming over
/// the determinized machine.
pub fn count_words(automaton: &Automaton, length: usize) -> BigUint {
    count_sequence(automaton, length).terms[length].clone()
}

/// Counts the words of every length `0..=max_len`.
pub fn count_sequence(automaton: &Automaton, max_len: usize) -> CountSequence {
    let d = automaton.determinize();
    let n = d.state_count();
    let mut ways = vec![BigUint::zero(); n];
    ways[d.initial()] = BigUint::one();
    let edges = d.transitions();
    let total = |ways: &[BigUint]| -> BigUint {
        (0..n)
            .filter(|&s| d.is_final(s))
            .map(|s| ways[s].clone())
            .sum()
    };
    let mut terms = vec![total(&ways)];
    for _ in 0..max_len {
        let mut next = vec![BigUint::zero(); n];
        for &(src, _, dst) in &edges {
            if !ways[src].is_zero() {
                next[dst] += &ways[src];
            }
        }
        ways = next;
        terms.push(total(&ways));
    }
    CountSequence { terms }
}

/// Shortest linear-feedback relation generating `seq`: the connection
/// polynomial `C` (ascending, `C[0] = 1`, length `L + 1`) with
/// `sum(C[i] * seq[n - i], i = 0..=L) = 0` for every `L <= n < seq.len()`,
/// and no shorter relation fits. Exact arithmetic over the rationals.
fn berlekamp_massey(seq: &[BigInt]) -> Vec<BigRational> {
    let s: Vec<BigRational> = seq
        .iter()
        .map(|t| BigRational::from(t.clone()))
        .collect();
    let mut connection = vec![BigRational::one()];
    let mut previous = vec![BigRational::one()];
    let mut length = 0usize;
    let mut shift = 1usize;
    let mut last_discrepancy = BigRational::one();
    for n in 0..s.len() {
        let mut discrepancy = s[n].clone();
        for i in 1..connection.len().min(n + 1) {
            discrepancy += &connection[i] * &s[n - i];
        }
        if discrepancy.is_zero() {
            shift += 1;
            continue;
        }
        let scale = &discrepancy / &last_discrepancy;
        let stash = connection.clone();
        if connection.len() < previous.len() + shift {
            connection.resize(previous.len() + shift, BigRational::zero());
        }
        for (i, p) in previous.iter().enumerate() {
            connection[i + shift] -= &scale * p;
        }
        if 2 * length <= n {
            length = n + 1 - length;
            previous = stash;
            last_discrepancy = discrepancy;
            shift = 1;
        } else {
            shift += 1;
        }
    }
    connection.truncate(length + 1);
    connection.resize(length + 1, BigRational::zero());
    connection
}

/// The rational generating function `sum(count_words(n) * x^n)` of the
/// language, fully reduced with denominator constant term `1`.
///
/// Counts enough series terms from the minimal acceptor (twice its state
/// count pins the answer down, since the transfer-matrix recurrence bounds
/// the order) and fits the shortest linear recurrence exactly. The result
/// is the unique lowest-terms form; its integrality is guaranteed because
/// an integer power series with a rational sum has integer lowest terms.
pub fn generating_function(automaton: &Automaton) -> RationalGf {
    let m = automaton.minimize();
    let needed = 2 * m.state_count() + 2;
    let terms: Vec<BigInt> = count_sequence(&m, needed - 1)
        .terms
        .iter()
        .map(|t| BigInt::from(t.clone()))
        .collect();
    let connection = berlekamp_massey(&terms);
    let order = connection.len() - 1;
    let rational_terms: Vec<BigRational> = terms
        .iter()
        .map(|t| BigRational::from(t.clone()))
        .collect();
    let numerator: Vec<BigRational> = (0..order)
        .map(|n| {
            let mut acc = BigRational::zero();
            for i in 0..connection.len().min(n + 1) {
                acc += &connection[i] * &rational_terms[n - i];
            }
            acc
        })
        .collect();
    let mut common = BigInt::one();
    for r in connection.iter().chain(numerator.iter()) {
        common = common.lcm(r.denom());
    }
    let scale = BigRational::from(common);
    let to_ints = |rs: &[BigRational]| -> Vec<BigInt> {
        rs.iter().map(|r| (r * &scale).to_integer()).collect()
    };
    let gf = RationalGf::new(
        Polynomial::new(to_ints(&numerator)),
        Polynomial::new(to_ints(&connection)),
    );
    debug_assert!(gf.denominator.coeff(0).is_one());
    gf
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automaton::Direction;

    fn poly(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_ints(coeffs)
    }

    #[test]
    fn polynomial_arithmetic() {
        let a = poly(&[1, 1]); // 1 + x
        let b = poly(&[1, -1]); // 1 - x
        assert_eq!(a.mul(&b), poly(&[1, 0, -1]));
        assert_eq!(a.add(&b), poly(&[2]));
        assert_eq!(a.sub(&a), Polynomial::zero());
        assert_eq!(Polynomial::zero().degree(), None);
        assert_eq!(poly(&[3, 0, 0]).degree(), Some(0));
        assert_eq!(poly(&[0, 0, 5]).coeff(2), BigInt::from(5));
        assert_eq!(poly(&[1, 2]).to_string(), "2x + 1");
        assert_eq!(poly(&[1, -1, -1]).to_string(), "-x^2 - x + 1");
        assert_eq!(poly(&[0, 0, 1]).to_string(), "x^2");
    }

    #[test]
    fn exact_division_inverts_multiplication() {
        let f = poly(&[2, -3, 1, 7]);
        let g = poly(&[-1, 0, 5]);
        assert_eq!(f.mul(&g).div_exact(&g), f);
        assert_eq!(f.mul(&g).div_exact(&f), g);
        assert_eq!(Polynomial::zero().div_exact(&g), Polynomial::zero());
    }

    #[test]
    fn gcd_examples() {
        // (x-1)(x+1) and (x+1)^2 share x+1.
        assert_eq!(poly(&[-1, 0, 1]).gcd(&poly(&[1, 2, 1])), poly(&[1, 1]));
        // Content participates.
        assert_eq!(poly(&[2, 2]).gcd(&poly(&[4, 4])), poly(&[2, 2]));
        // Coprime inputs give a constant.
        assert_eq!(poly(&[1, 1]).gcd(&poly(&[-1, 1])), poly(&[1]));
        // Sign is normalized to a positive leading coefficient.
        assert_eq!(poly(&[-1, -1]).gcd(&poly(&[-2, -2])), poly(&[1, 1]));
        assert_eq!(Polynomial::zero().gcd(&poly(&[0, -3])), poly(&[0, 3]));
    }

    /// Cofactor expansion along the first row: an independent, obviously
    /// correct determinant for cross-checking Bareiss elimination.
    fn cofactor_det(m: &[Vec<Polynomial>]) -> Polynomial {
        let n = m.len();
        if n == 0 {
            return Polynomial::one();
        }
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = Polynomial::zero();
        for j in 0..n {
            if m[0][j].is_zero() {
                continue;
            }
            let minor: Vec<Vec<Polynomial>> = (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m[i][c].clone())
                        .collect()
                })
                .collect();
            let term = m[0][j].mul(&cofactor_det(&minor));
            acc = if j % 2 == 0 {
                acc.add(&term)
            } else {
                acc.sub(&term)
            };
        }
        acc
    }

    #[test]
    fn bareiss_matches_cofactor_expansion() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x9e3779b97f4a7c15);
        for trial in 0..60 {
            let n = rng.gen_range(1..=4);
            let max_degree = if trial % 2 == 0 { 0 } else { 1 };
            let m: Vec<Vec<Polynomial>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let coeffs: Vec<i64> =
                                (0..=max_degree).map(|_| rng.gen_range(-4..=4)).collect();
                            Polynomial::from_ints(&coeffs)
                        })
                        .collect()
                })
                .collect();
            assert_eq!(determinant(&m), cofactor_det(&m), "matrix {m:?}");
        }
    }

    #[test]
    fn singular_and_permuted_matrices() {
        // Zero row gives zero.
        let m = vec![
            vec![poly(&[0]), poly(&[0])],
            vec![poly(&[1, 1]), poly(&[3])],
        ];
        assert_eq!(determinant(&m), Polynomial::zero());
        // A row swap is needed and the sign accounts for it.
        let m = vec![
            vec![Polynomial::zero(), Polynomial::one()],
            vec![Polynomial::one(), Polynomial::zero()],
        ];
        assert_eq!(determinant(&m), poly(&[-1]));
        assert_eq!(determinant(&[]), Polynomial::one());
    }

    /// Acceptor of the words over {1,2} in which every 2 is immediately
    /// followed by a 1; counted by the Fibonacci numbers.
    fn fibonacci_automaton() -> Automaton {
        Automaton::new(
            2,
            Direction::Forward,
            2,
            0,
            &[0],
            &[(0, Some(1), 0), (0, Some(2), 1), (1, Some(1), 0)],
        )
        .unwrap()
    }

    #[test]
    fn fibonacci_generating_function() {
        let gf = generating_function(&fibonacci_automaton());
        assert_eq!(gf.numerator(), &poly(&[1]));
        assert_eq!(gf.denominator(), &poly(&[1, -1, -1]));
        let series = gf.series(9);
        let expected: Vec<BigInt> = [1, 1, 2, 3, 5, 8, 13, 21, 34]
            .iter()
            .map(|&v| BigInt::from(v))
            .collect();
        assert_eq!(series, expected);

        let rec = gf.linear_recurrence();
        assert_eq!(rec.coefficients, vec![BigInt::one(), BigInt::one()]);
        assert_eq!(rec.valid_from(), 2);
        assert_eq!(rec.expand(20), gf.series(20));
    }

    #[test]
    fn all_words_generating_function() {
        let gf = generating_function(&Automaton::all_words(3, Direction::Forward));
        assert_eq!(gf.numerator(), &poly(&[1]));
        assert_eq!(gf.denominator(), &poly(&[1, -3]));
        assert_eq!(
            gf.series(4),
            vec![
                BigInt::from(1),
                BigInt::from(3),
                BigInt::from(9),
                BigInt::from(27)
            ]
        );
    }

    #[test]
    fn finite_language_has_polynomial_generating_function() {
        let a = Automaton::from_words(
            2,
            Direction::Forward,
            &[vec![1], vec![2, 1], vec![1, 1, 2]],
        )
        .unwrap();
        let gf = generating_function(&a);
        assert_eq!(gf.denominator(), &poly(&[1]));
        assert_eq!(gf.numerator(), &poly(&[0, 1, 1, 1]));
        let rec = gf.linear_recurrence();
        assert_eq!(rec.order(), 0);
        assert_eq!(rec.valid_from(), 4);
        assert_eq!(
            rec.expand(6).last().cloned(),
            Some(BigInt::zero())
        );
    }

    #[test]
    fn empty_language_counts_nothing() {
        let gf = generating_function(&Automaton::empty_language(2, Direction::Forward));
        assert_eq!(gf, RationalGf::zero());
        assert!(gf.series(5).iter().all(BigInt::is_zero));
        let counts = count_sequence(&Automaton::empty_language(2, Direction::Forward), 4);
        assert!(counts.terms().iter().all(BigUint::is_zero));
    }

    #[test]
    fn series_agrees_with_direct_count_on_random_machines() {
        use crate::automaton::Label;
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(0x5851f42d4c957f2d);
        for _ in 0..40 {
            let states = rng.gen_range(1..=6);
            let alphabet = rng.gen_range(1..=3);
            let direction = if rng.gen() {
                Direction::Forward
            } else {
                Direction::Reversed
            };
            let edge_count = rng.gen_range(0..=states * alphabet);
            let transitions: Vec<(usize, Label, usize)> = (0..edge_count)
                .map(|_| {
                    let label = if rng.gen_ratio(1, 8) {
                        None
                    } else {
                        Some(rng.gen_range(1..=alphabet))
                    };
                    (rng.gen_range(0..states), label, rng.gen_range(0..states))
                })
                .collect();
            let finals: Vec<usize> = (0..states).filter(|_| rng.gen()).collect();
            let a = Automaton::new(
                alphabet,
                direction,
                states,
                rng.gen_range(0..states),
                &finals,
                &transitions,
            )
            .unwrap();
            let series = generating_function(&a).series(9);
            let counts = count_sequence(&a, 8);
            for (n, term) in series.iter().enumerate() {
                assert_eq!(
                    term.to_biguint().expect("counts are nonnegative"),
                    counts.terms()[n],
                    "length {n} of {a:?}"
                );
            }
        }
    }

    /// The independent construction: transfer matrix, two Bareiss
    /// determinants via Cramer's rule, then gcd reduction. Cubic in states,
    /// so only used here as an oracle on small machines.
    fn transfer_matrix_gf(automaton: &Automaton) -> RationalGf {
        let m = automaton.minimize();
        let n = m.state_count();
        let mut counts = vec![vec![0u64; n]; n];
        for (src, _, dst) in m.transitions() {
            counts[src][dst] += 1;
        }
        let matrix: Vec<Vec<Polynomial>> = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        let unit = i64::from(s == t);
                        Polynomial::from_ints(&[unit, -(counts[s][t] as i64)])
                    })
                    .collect()
            })
            .collect();
        let den = determinant(&matrix);
        let mut numerator_matrix = matrix;
        for (s, row) in numerator_matrix.iter_mut().enumerate() {
            row[m.initial()] = if m.is_final(s) {
                Polynomial::one()
            } else {
                Polynomial::zero()
            };
        }
        let num = determinant(&numerator_matrix);
        RationalGf::new(num, den)
    }

    #[test]
    fn recurrence_fit_matches_transfer_matrix_oracle() {
        use crate::automaton::Label;
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        for named in [
            fibonacci_automaton(),
            Automaton::all_words(3, Direction::Forward),
            Automaton::empty_language(2, Direction::Forward),
            Automaton::from_words(2, Direction::Forward, &[vec![1], vec![2, 1]]).unwrap(),
        ] {
            assert_eq!(generating_function(&named), transfer_matrix_gf(&named));
        }
        let mut rng = StdRng::seed_from_u64(0x00c0ffee);
        for _ in 0..30 {
            let states = rng.gen_range(1..=5);
            let alphabet = rng.gen_range(1..=3);
            let edge_count = rng.gen_range(0..=states * alphabet);
            let transitions: Vec<(usize, Label, usize)> = (0..edge_count)
                .map(|_| {
                    (
                        rng.gen_range(0..states),
                        Some(rng.gen_range(1..=alphabet)),
                        rng.gen_range(0..states),
                    )
                })
                .collect();
            let finals: Vec<usize> = (0..states).filter(|_| rng.gen()).collect();
            let a = Automaton::new(alphabet, Direction::Forward, states, 0, &finals, &transitions)
                .unwrap();
            assert_eq!(
                generating_function(&a),
                transfer_matrix_gf(&a),
                "mismatch on {a:?}"
            );
        }
    }

    #[test]
    fn count_words_matches_enumeration() {
        let a = fibonacci_automaton();
        for n in 0..7 {
            let listed = a
                .enumerate_words(n)
                .into_iter()
                .filter(|w| w.len() == n)
                .count();
            assert_eq!(count_words(&a, n), BigUint::from(listed));
        }
    }
}
