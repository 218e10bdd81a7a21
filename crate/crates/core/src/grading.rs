//! Degree and parity shifts of state spaces, and the linear constraints that
//! single out the admissible degree shifts.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::surface::{CountVector, SuturedSurface};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `n` or `n/d`.
pub fn parse_rational(s: &str) -> std::result::Result<Rational, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| format!("invalid rational `{s}`"))?;
    let d: BigInt = d.parse().map_err(|_| format!("invalid rational `{s}`"))?;
    if d.is_zero() {
        return Err(format!("zero denominator in `{s}`"));
    }
    Ok(Rational::new(n, d))
}

/// Formats a rational as `n` or `n/d`.
pub fn format_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Coefficients of the degree shift family.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ShiftParams {
    pub a1: Rational,
    pub a2: Rational,
    pub a3: Rational,
    pub a4: Rational,
}

impl ShiftParams {
    pub fn new(a1: Rational, a2: Rational, a3: Rational, a4: Rational) -> Self {
        ShiftParams { a1, a2, a3, a4 }
    }

    pub fn tensor() -> Self {
        ShiftParams::new(int(1), int(0), int(0), int(0))
    }

    pub fn half() -> Self {
        ShiftParams::new(rat(1, 2), rat(1, 2), int(0), rat(-1, 2))
    }

    /// The shift evaluated on arbitrary (rational) counts; it is linear.
    pub fn delta_of_counts(&self, k: &[Rational; 9]) -> Rational {
        let two = int(2);
        let h = -&two * &k[0] + &two * &k[1] + &two * &k[2]
            + &k[3]
            + &k[4]
            + &k[5]
            + &k[6]
            + &k[7]
            + &k[8];
        let one = Rational::one();
        -&self.a1 * h
            + (&self.a1 - &one) * &k[3]
            + &self.a2 * &k[4]
            + &self.a3 * &k[2]
            + (&self.a1 - &one) / &two * &k[5]
            + &self.a4 * &k[6]
    }

    pub fn delta_counts(&self, k: &CountVector) -> Rational {
        self.delta_of_counts(&k.as_array().map(|x| int(x as i64)))
    }

    pub fn delta(&self, f: &SuturedSurface) -> Rational {
        self.delta_counts(&f.counts())
    }

    /// The shift written as `C1 k1 + ... + C9 k9`.
    pub fn coefficients(&self) -> [Rational; 9] {
        std::array::from_fn(|i| {
            let mut unit: [Rational; 9] = std::array::from_fn(|_| Rational::zero());
            unit[i] = Rational::one();
            self.delta_of_counts(&unit)
        })
    }
}

impl fmt::Display for ShiftParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            format_rational(&self.a1),
            format_rational(&self.a2),
            format_rational(&self.a3),
            format_rational(&self.a4)
        )
    }
}

impl FromStr for ShiftParams {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split(',').collect();
        let [a1, a2, a3, a4] = parts[..] else {
            return Err(format!("expected four comma-separated rationals, got `{s}`"));
        };
        Ok(ShiftParams::new(
            parse_rational(a1)?,
            parse_rational(a2)?,
            parse_rational(a3)?,
            parse_rational(a4)?,
        ))
    }
}

/// Bits of the linear parity family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct ParityParams {
    pub n1: bool,
    pub n2: bool,
    pub n3: bool,
    pub n4: bool,
}

impl ParityParams {
    pub fn new(n1: bool, n2: bool, n3: bool, n4: bool) -> Self {
        ParityParams { n1, n2, n3, n4 }
    }

    pub fn pi_counts(&self, k: &CountVector) -> u8 {
        let h = k.rank_h();
        let total = h
            + i64::from(self.n1) * k.k5 as i64
            + i64::from(self.n2) * k.k3 as i64
            + i64::from(self.n3) * k.k6 as i64
            + i64::from(self.n4) * k.k7 as i64;
        total.rem_euclid(2) as u8
    }

    pub fn pi(&self, f: &SuturedSurface) -> u8 {
        self.pi_counts(&f.counts())
    }
}

impl fmt::Display for ParityParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{}",
            u8::from(self.n1),
            u8::from(self.n2),
            u8::from(self.n3),
            u8::from(self.n4)
        )
    }
}

impl FromStr for ParityParams {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let bits: Vec<bool> = s
            .split(',')
            .map(|b| match b.trim() {
                "0" => Ok(false),
                "1" => Ok(true),
                other => Err(format!("parity bits must be 0 or 1, got `{other}`")),
            })
            .collect::<std::result::Result<_, _>>()?;
        let [n1, n2, n3, n4] = bits[..] else {
            return Err(format!("expected four comma-separated bits, got `{s}`"));
        };
        Ok(ParityParams::new(n1, n2, n3, n4))
    }
}

/// How the parity of a state space is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParityRule {
    Linear(ParityParams),
    /// The degree shift reduced mod 2; needs an integral degree shift.
    DegreeMod2,
}

/// A degree shift together with a parity rule.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Grading {
    pub shift: ShiftParams,
    pub parity: ParityRule,
}

impl Grading {
    pub fn new(shift: ShiftParams, parity: ParityParams) -> Self {
        Grading {
            shift,
            parity: ParityRule::Linear(parity),
        }
    }

    /// `δ = -h`, `π = h`: the grading that turns gluing into tensor products
    /// without corrections.
    pub fn tensor() -> Self {
        Grading::new(ShiftParams::tensor(), ParityParams::default())
    }

    /// The half shift with parity equal to the degree mod 2.
    pub fn half() -> Self {
        Grading {
            shift: ShiftParams::half(),
            parity: ParityRule::DegreeMod2,
        }
    }

    pub fn preset(name: &str) -> Option<Self> {
        match name {
            "tensor" => Some(Grading::tensor()),
            "half" => Some(Grading::half()),
            _ => None,
        }
    }

    pub fn delta(&self, f: &SuturedSurface) -> Rational {
        self.shift.delta(f)
    }

    pub fn pi(&self, f: &SuturedSurface) -> Result<u8> {
        self.pi_counts(&f.counts())
    }

    pub fn pi_counts(&self, k: &CountVector) -> Result<u8> {
        match self.parity {
            ParityRule::Linear(p) => Ok(p.pi_counts(k)),
            ParityRule::DegreeMod2 => {
                let d = self.shift.delta_counts(k);
                if !d.is_integer() {
                    return Err(Error::ParityUndefined {
                        intervals: k.k6,
                        sminus_circles: k.sminus_circles(),
                    });
                }
                Ok(d.to_integer().mod_floor(&BigInt::from(2)).to_u8().unwrap())
            }
        }
    }
}

impl fmt::Display for Grading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Grading::tensor() {
            return f.write_str("tensor");
        }
        if *self == Grading::half() {
            return f.write_str("half");
        }
        match self.parity {
            ParityRule::Linear(p) => write!(f, "shift {} parity {p}", self.shift),
            ParityRule::DegreeMod2 => write!(f, "shift {} parity degree mod 2", self.shift),
        }
    }
}

/// Whether the half shift is integral: `k6 ≡ 2 (k8 + k9) mod 4`.
pub fn half_parity_defined(k: &CountVector) -> bool {
    (k.k6 as i64 - 2 * k.sminus_circles() as i64).rem_euclid(4) == 0
}

pub fn delta_half(f: &SuturedSurface) -> Rational {
    ShiftParams::half().delta(f)
}

pub fn pi_half(f: &SuturedSurface) -> Result<u8> {
    Grading::half().pi(f)
}

/// Names of the ten gluing constraints, in order.
pub const CONSTRAINT_NAMES: [&str; 10] = [
    "1-1",
    "1-2/1-3, no S- circle",
    "1-2/1-3, one S- circle",
    "2-1a, no S- circle",
    "2-1a, one S- circle",
    "2-1a, two S- circles",
    "2-1b",
    "2-2a, no S- circle",
    "2-2a, one S- circle",
    "2-2b",
];

/// Each constraint as (coefficients of C1..C9, right-hand side). A constraint
/// says that `C·k` changes by exactly the shift one self-gluing case needs.
pub fn constraint_system() -> [([i64; 9], i64); 10] {
    [
        ([-1, 0, 0, 1, 0, -2, 0, 1, -2], 0),
        ([-1, 0, 0, 0, 0, -2, 0, 0, -1], 1),
        ([-1, 0, 0, 0, 0, -2, 0, 1, -2], 1),
        ([0, 0, 0, 0, 0, -2, 0, 0, 1], 1),
        ([0, 0, 0, 0, 0, -2, 0, 1, 0], 1),
        ([0, 0, 0, 0, 0, -2, 0, 2, -1], 1),
        ([0, 0, 0, 1, 0, -2, 0, 2, -1], 0),
        ([0, 1, 0, 0, 0, -2, 0, 0, -1], 1),
        ([0, 1, 0, 0, 0, -2, 0, 1, -2], 1),
        ([0, 1, 0, 1, 0, -2, 0, 1, -2], 0),
    ]
}

/// Left-hand side minus right-hand side of every constraint.
pub fn constraint_residuals(c: &[Rational; 9]) -> [Rational; 10] {
    let system = constraint_system();
    std::array::from_fn(|r| {
        let (row, rhs) = &system[r];
        row.iter()
            .zip(c)
            .fold(Rational::zero(), |acc, (a, x)| acc + int(*a) * x)
            - int(*rhs)
    })
}

/// An affine expression `constant + Σ coeff · C_free`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineExpr {
    pub constant: Rational,
    /// Pairs of (free variable index, coefficient), zero coefficients omitted.
    pub terms: Vec<(usize, Rational)>,
}

impl AffineExpr {
    pub fn eval(&self, free: &[Rational; 9]) -> Rational {
        self.terms
            .iter()
            .fold(self.constant.clone(), |acc, (i, c)| acc + c * &free[*i])
    }
}

impl fmt::Display for AffineExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, c) in &self.terms {
            let name = format!("C{}", i + 1);
            parts.push(if c.is_one() {
                name
            } else if *c == -Rational::one() {
                format!("-{name}")
            } else {
                format!("{}*{name}", format_rational(c))
            });
        }
        if !self.constant.is_zero() || parts.is_empty() {
            parts.push(format_rational(&self.constant));
        }
        let mut s = parts.join(" + ");
        s = s.replace("+ -", "- ");
        f.write_str(&s)
    }
}

/// Solution set of the constraints: every variable as an affine expression
/// in the free variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstraintSolution {
    pub free: Vec<usize>,
    pub values: [AffineExpr; 9],
}

impl ConstraintSolution {
    /// The point of the family with the given values of the free variables
    /// (entries at other indices are ignored).
    pub fn point(&self, free: &[Rational; 9]) -> [Rational; 9] {
        std::array::from_fn(|i| self.values[i].eval(free))
    }
}

/// Solves the constraint system by exact Gauss-Jordan elimination.
pub fn solve_constraints() -> Result<ConstraintSolution> {
    let system = constraint_system();
    let mut rows: Vec<Vec<Rational>> = system
        .iter()
        .map(|(row, rhs)| {
            let mut r: Vec<Rational> = row.iter().map(|a| int(*a)).collect();
            r.push(int(*rhs));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut next = 0;
    for col in 0..9 {
        let Some(p) = (next..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col].recip();
        for x in rows[next].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..rows.len() {
            if r != next && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in 0..10 {
                    let delta = &factor * &rows[next][c];
                    rows[r][c] -= delta;
                }
            }
        }
        pivots.push(col);
        next += 1;
    }
    if rows[next..].iter().any(|r| !r[9].is_zero()) {
        return Err(Error::ParameterConstraintViolated(
            "constraint system is inconsistent".into(),
        ));
    }
    let free: Vec<usize> = (0..9).filter(|c| !pivots.contains(c)).collect();
    let values = std::array::from_fn(|v| {
        if let Some(r) = pivots.iter().position(|&p| p == v) {
            AffineExpr {
                constant: rows[r][9].clone(),
                terms: free
                    .iter()
                    .filter(|&&f| !rows[r][f].is_zero())
                    .map(|&f| (f, -rows[r][f].clone()))
                    .collect(),
            }
        } else {
            AffineExpr {
                constant: Rational::zero(),
                terms: vec![(v, Rational::one())],
            }
        }
    });
    Ok(ConstraintSolution { free, values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surface::{closed_surface, disk_plus_minus, open_pants, surface_fgp};

    #[test]
    fn tensor_shift_is_minus_h() {
        for f in [surface_fgp(2, 3), open_pants(3), closed_surface(2)] {
            assert_eq!(ShiftParams::tensor().delta(&f), int(-(f.rank_h() as i64)));
            assert_eq!(ParityParams::default().pi(&f), (f.rank_h() % 2) as u8);
        }
    }

    #[test]
    fn pants_shift_formula() {
        let params = [
            ShiftParams::new(rat(3, 5), int(2), rat(-1, 3), int(7)),
            ShiftParams::half(),
            ShiftParams::tensor(),
        ];
        for s in params {
            for p in 0..6i64 {
                let expected = -int(p) * (&s.a1 + int(1)) / int(2) + (&s.a1 - int(1)) / int(2);
                assert_eq!(s.delta(&open_pants(p as usize)), expected);
            }
        }
        for p in 0..6u64 {
            assert_eq!(ShiftParams::tensor().delta(&open_pants(p as usize)), int(-(p as i64)));
            for n3 in [false, true] {
                let pp = ParityParams::new(false, false, n3, false);
                assert_eq!(
                    pp.pi(&open_pants(p as usize)) as u64,
                    (p + u64::from(n3) * (p + 1)) % 2
                );
            }
        }
    }

    #[test]
    fn closed_surface_parity_with_n2() {
        let pp = ParityParams::new(false, true, false, false);
        for g in 0..4 {
            assert_eq!(pp.pi(&closed_surface(g)), 1);
        }
    }

    #[test]
    fn half_shift_on_fgp() {
        for g in 0..4u32 {
            for p in 1..5usize {
                let f = surface_fgp(g, p);
                let h = f.rank_h() as i64;
                assert_eq!(
                    delta_half(&f),
                    rat(-h, 2) - rat(p as i64, 2) + rat(1, 2),
                    "g={g} p={p}"
                );
            }
        }
        let f12 = surface_fgp(1, 2);
        assert_eq!(f12.rank_h(), 3);
        assert_eq!(delta_half(&f12), int(-2));
        assert_eq!(pi_half(&f12), Ok(0));
    }

    #[test]
    fn half_parity_needs_the_integrality_condition() {
        assert_eq!(
            pi_half(&disk_plus_minus()),
            Err(Error::ParityUndefined {
                intervals: 1,
                sminus_circles: 1
            })
        );
        // k6 = 2, one S- circle: 2 ≡ 2 mod 4
        assert!(pi_half(&open_pants(1)).is_ok());
    }

    #[test]
    fn residuals_of_zero_coefficients() {
        let zero: [Rational; 9] = std::array::from_fn(|_| Rational::zero());
        let r = constraint_residuals(&zero);
        for (i, (_, rhs)) in constraint_system().iter().enumerate() {
            assert_eq!(r[i], int(-*rhs));
        }
    }

    #[test]
    fn tensor_coefficients_satisfy_constraints() {
        let c = ShiftParams::tensor().coefficients();
        // -h expanded: 2k1 - 2k2 - 2k3 - k4 - ... - k9
        assert_eq!(c, [2, -2, -2, -1, -1, -1, -1, -1, -1].map(int));
        assert!(constraint_residuals(&c).iter().all(Zero::is_zero));
        let mut bumped = c.clone();
        bumped[5] += int(1);
        assert!(constraint_residuals(&bumped).iter().any(|r| !r.is_zero()));
    }

    #[test]
    fn solution_family_matches_hand_elimination() {
        let sol = solve_constraints().unwrap();
        assert_eq!(sol.free, vec![2, 4, 6, 8]);
        let c9 = |k: i64| AffineExpr {
            constant: Rational::zero(),
            terms: vec![(8, int(k))],
        };
        assert_eq!(sol.values[7], c9(1));
        assert_eq!(sol.values[0], c9(-2));
        assert_eq!(sol.values[1], c9(2));
        assert_eq!(
            sol.values[5],
            AffineExpr {
                constant: rat(-1, 2),
                terms: vec![(8, rat(1, 2))]
            }
        );
        assert_eq!(
            sol.values[3],
            AffineExpr {
                constant: int(-1),
                terms: vec![]
            }
        );
    }

    #[test]
    fn family_at_c9_minus_one_is_a_tensor_like_shift() {
        let sol = solve_constraints().unwrap();
        let mut free: [Rational; 9] = std::array::from_fn(|_| Rational::zero());
        // absorb the k3, k5, k7 coefficients of -h
        free[2] = int(-2);
        free[4] = int(-1);
        free[6] = int(-1);
        free[8] = int(-1);
        assert_eq!(sol.point(&free), ShiftParams::tensor().coefficients());
    }

    #[test]
    fn parse_and_print() {
        let s: ShiftParams = "1/2, 1/2,0,-1/2".parse().unwrap();
        assert_eq!(s, ShiftParams::half());
        assert_eq!(s.to_string(), "1/2,1/2,0,-1/2");
        let p: ParityParams = "0,1,0,1".parse().unwrap();
        assert_eq!(p, ParityParams::new(false, true, false, true));
        assert!("1,2".parse::<ShiftParams>().is_err());
        assert!("0,2,0,0".parse::<ParityParams>().is_err());
    }
}
