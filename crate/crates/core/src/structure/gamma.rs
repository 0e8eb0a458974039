use crate::error::{Error, Result};

use super::{check_ids, check_table, FiniteStructure};

/// A finite Γ-semiring: carriers `S`, `Γ`, their additions and the ternary
/// product `S × Γ × S → S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaSemiring {
    name: String,
    s_ids: Vec<String>,
    g_ids: Vec<String>,
    add_s: Vec<u32>,
    add_g: Vec<u32>,
    // index (x * |Γ| + γ) * |S| + y
    prod: Vec<u32>,
}

impl GammaSemiring {
    /// Builds an instance from row-major tables. Only shapes and index bounds
    /// are checked here; axioms are checked by `validate_gamma_semiring`.
    pub fn new(
        name: impl Into<String>,
        s_ids: Vec<String>,
        g_ids: Vec<String>,
        add_s: Vec<u32>,
        add_g: Vec<u32>,
        prod: Vec<u32>,
    ) -> Result<Self> {
        check_ids("S", &s_ids)?;
        check_ids("Γ", &g_ids)?;
        let (ns, ng) = (s_ids.len(), g_ids.len());
        if ns > u32::MAX as usize || ng > u32::MAX as usize {
            return Err(Error::Structural("carrier too large".into()));
        }
        check_table("add_S", &add_s, ns * ns, ns)?;
        check_table("add_G", &add_g, ng * ng, ng)?;
        check_table("product", &prod, ns * ng * ns, ns)?;
        Ok(GammaSemiring { name: name.into(), s_ids, g_ids, add_s, add_g, prod })
    }

    /// Builds an instance from closures over indices.
    pub fn from_fns(
        name: impl Into<String>,
        s_ids: Vec<String>,
        g_ids: Vec<String>,
        add_s: impl Fn(usize, usize) -> usize,
        add_g: impl Fn(usize, usize) -> usize,
        prod: impl Fn(usize, usize, usize) -> usize,
    ) -> Result<Self> {
        let (ns, ng) = (s_ids.len(), g_ids.len());
        let mut ts = Vec::with_capacity(ns * ns);
        for a in 0..ns {
            for b in 0..ns {
                ts.push(add_s(a, b) as u32);
            }
        }
        let mut tg = Vec::with_capacity(ng * ng);
        for a in 0..ng {
            for b in 0..ng {
                tg.push(add_g(a, b) as u32);
            }
        }
        let mut tp = Vec::with_capacity(ns * ng * ns);
        for x in 0..ns {
            for g in 0..ng {
                for y in 0..ns {
                    tp.push(prod(x, g, y) as u32);
                }
            }
        }
        GammaSemiring::new(name, s_ids, g_ids, ts, tg, tp)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn s_len(&self) -> usize {
        self.s_ids.len()
    }

    pub fn g_len(&self) -> usize {
        self.g_ids.len()
    }

    pub fn s_ids(&self) -> &[String] {
        &self.s_ids
    }

    pub fn g_ids(&self) -> &[String] {
        &self.g_ids
    }

    #[inline]
    pub fn add_s(&self, a: usize, b: usize) -> usize {
        self.add_s[a * self.s_ids.len() + b] as usize
    }

    #[inline]
    pub fn add_g(&self, a: usize, b: usize) -> usize {
        self.add_g[a * self.g_ids.len() + b] as usize
    }

    /// `x γ y`.
    #[inline]
    pub fn prod(&self, x: usize, gamma: usize, y: usize) -> usize {
        let (ns, ng) = (self.s_ids.len(), self.g_ids.len());
        self.prod[(x * ng + gamma) * ns + y] as usize
    }

    pub fn add_s_table(&self) -> &[u32] {
        &self.add_s
    }

    pub fn add_g_table(&self) -> &[u32] {
        &self.add_g
    }

    pub fn prod_table(&self) -> &[u32] {
        &self.prod
    }

    /// Overwrites one product cell. Used to derive mutated instances.
    pub fn set_prod(&mut self, x: usize, gamma: usize, y: usize, value: usize) -> Result<()> {
        let (ns, ng) = (self.s_ids.len(), self.g_ids.len());
        if x >= ns || gamma >= ng || y >= ns || value >= ns {
            return Err(Error::Structural("product cell out of range".into()));
        }
        self.prod[(x * ng + gamma) * ns + y] = value as u32;
        Ok(())
    }
}

impl FiniteStructure for GammaSemiring {
    fn name(&self) -> &str {
        &self.name
    }

    fn order(&self) -> usize {
        self.s_len()
    }

    fn ids(&self) -> &[String] {
        &self.s_ids
    }

    fn add(&self, a: usize, b: usize) -> usize {
        self.add_s(a, b)
    }

    fn for_each_product(&self, f: &mut dyn FnMut(usize, usize, usize)) {
        let (ns, ng) = (self.s_len(), self.g_len());
        for x in 0..ns {
            for g in 0..ng {
                let row = &self.prod[(x * ng + g) * ns..(x * ng + g + 1) * ns];
                for (y, &z) in row.iter().enumerate() {
                    f(x, y, z as usize);
                }
            }
        }
    }
}
