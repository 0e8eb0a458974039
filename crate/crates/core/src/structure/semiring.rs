use crate::error::Result;

use super::{check_ids, check_table, FiniteStructure};

/// A finite semiring with dense addition and multiplication tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Semiring {
    name: String,
    ids: Vec<String>,
    add: Vec<u32>,
    mul: Vec<u32>,
}

impl Semiring {
    pub fn new(name: impl Into<String>, ids: Vec<String>, add: Vec<u32>, mul: Vec<u32>) -> Result<Self> {
        check_ids("carrier", &ids)?;
        let n = ids.len();
        check_table("add", &add, n * n, n)?;
        check_table("mul", &mul, n * n, n)?;
        Ok(Semiring { name: name.into(), ids, add, mul })
    }

    pub fn from_fns(
        name: impl Into<String>,
        ids: Vec<String>,
        add: impl Fn(usize, usize) -> usize,
        mul: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = ids.len();
        let mut ta = Vec::with_capacity(n * n);
        let mut tm = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                ta.push(add(a, b) as u32);
                tm.push(mul(a, b) as u32);
            }
        }
        Semiring::new(name, ids, ta, tm)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    #[inline]
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.ids.len() + b] as usize
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.ids.len() + b] as usize
    }

    pub fn add_table(&self) -> &[u32] {
        &self.add
    }

    pub fn mul_table(&self) -> &[u32] {
        &self.mul
    }

    pub fn set_mul(&mut self, a: usize, b: usize, value: usize) {
        let n = self.ids.len();
        self.mul[a * n + b] = value as u32;
    }

    pub fn is_mul_commutative(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| (a + 1..n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Multiplicative identity, if one exists.
    pub fn identity(&self) -> Option<usize> {
        let n = self.len();
        (0..n).find(|&e| (0..n).all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }
}

impl FiniteStructure for Semiring {
    fn name(&self) -> &str {
        &self.name
    }

    fn order(&self) -> usize {
        self.len()
    }

    fn ids(&self) -> &[String] {
        &self.ids
    }

    fn add(&self, a: usize, b: usize) -> usize {
        Semiring::add(self, a, b)
    }

    fn for_each_product(&self, f: &mut dyn FnMut(usize, usize, usize)) {
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                f(x, y, self.mul(x, y));
            }
        }
    }
}
