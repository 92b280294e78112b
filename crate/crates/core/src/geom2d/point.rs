use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use super::rational::{to_exact, Rational};

/// Exact point (or vector) of the plane.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational2 {
    pub x: Rational,
    pub y: Rational,
}

impl Rational2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(super::rational::int(x), super::rational::int(y))
    }

    pub fn zero() -> Self {
        Self::new(Rational::zero(), Rational::zero())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn dot(&self, other: &Self) -> Rational {
        &self.x * &other.x + &self.y * &other.y
    }

    /// z-component of `self × other`.
    pub fn cross(&self, other: &Self) -> Rational {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(&self.x * factor, &self.y * factor)
    }

    pub fn sum(&self) -> Rational {
        &self.x + &self.y
    }

    /// Component-wise `self >= other`.
    pub fn weakly_dominates(&self, other: &Self) -> bool {
        self.x >= other.x && self.y >= other.y
    }

    /// Component-wise `>=` with at least one strict inequality. Equal points
    /// never dominate each other.
    pub fn dominates(&self, other: &Self) -> bool {
        self.weakly_dominates(other) && self != other
    }

    /// Both components strictly greater.
    pub fn strongly_dominates(&self, other: &Self) -> bool {
        self.x > other.x && self.y > other.y
    }

    pub fn component_max(&self, other: &Self) -> Self {
        Self::new(
            self.x.clone().max(other.x.clone()),
            self.y.clone().max(other.y.clone()),
        )
    }

    pub fn component_min(&self, other: &Self) -> Self {
        Self::new(
            self.x.clone().min(other.x.clone()),
            self.y.clone().min(other.y.clone()),
        )
    }

    /// `a + t (b - a)`
    pub fn lerp(a: &Self, b: &Self, t: &Rational) -> Self {
        a + &(b - a).scale(t)
    }
}

/// Orientation of the triple: positive for a left turn (counterclockwise).
pub fn orient(a: &Rational2, b: &Rational2, c: &Rational2) -> Rational {
    (b - a).cross(&(c - a))
}

/// `p` lies on the closed segment `[a, b]`.
pub fn on_segment(a: &Rational2, b: &Rational2, p: &Rational2) -> bool {
    orient(a, b, p).is_zero()
        && (p - a).dot(&(p - b)) <= Rational::zero()
}

impl fmt::Display for Rational2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", to_exact(&self.x), to_exact(&self.y))
    }
}

impl<'a> Add<&'a Rational2> for &'a Rational2 {
    type Output = Rational2;
    fn add(self, rhs: &'a Rational2) -> Rational2 {
        Rational2::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl<'a> Sub<&'a Rational2> for &'a Rational2 {
    type Output = Rational2;
    fn sub(self, rhs: &'a Rational2) -> Rational2 {
        Rational2::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl Add for Rational2 {
    type Output = Rational2;
    fn add(self, rhs: Rational2) -> Rational2 {
        &self + &rhs
    }
}

impl Sub for Rational2 {
    type Output = Rational2;
    fn sub(self, rhs: Rational2) -> Rational2 {
        &self - &rhs
    }
}

impl Neg for &Rational2 {
    type Output = Rational2;
    fn neg(self) -> Rational2 {
        Rational2::new(-&self.x, -&self.y)
    }
}

impl Mul<&Rational2> for &Rational {
    type Output = Rational2;
    fn mul(self, rhs: &Rational2) -> Rational2 {
        rhs.scale(self)
    }
}
