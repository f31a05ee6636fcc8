//! Bin packing instances and the counted access layer used by the
//! sublinear estimators.

use crate::error::{Error, Result};
use crate::sampling::Rng;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

/// A list of item sizes, each in `(0, 1]`.
///
/// The total size is cached lazily. Sublinear code paths never call
/// [`Instance::sum`]; they go through an [`ItemProbe`] instead.
#[derive(Debug, Default)]
pub struct Instance {
    items: Vec<f64>,
    sum_cache: OnceLock<f64>,
}

impl Clone for Instance {
    fn clone(&self) -> Self {
        let sum_cache = OnceLock::new();
        if let Some(s) = self.sum_cache.get() {
            let _ = sum_cache.set(*s);
        }
        Self {
            items: self.items.clone(),
            sum_cache,
        }
    }
}

impl PartialEq for Instance {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
    }
}

pub(crate) fn check_size(x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 && x <= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain(format!("item size {x} is not in (0, 1]")))
    }
}

impl Instance {
    pub fn new(items: Vec<f64>) -> Result<Self> {
        for &x in &items {
            check_size(x)?;
        }
        Ok(Self {
            items,
            sum_cache: OnceLock::new(),
        })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn items(&self) -> &[f64] {
        &self.items
    }

    /// Full-scan total size (cached after the first call).
    pub fn sum(&self) -> f64 {
        *self.sum_cache.get_or_init(|| self.items.iter().sum())
    }

    pub fn cached_sum(&self) -> Option<f64> {
        self.sum_cache.get().copied()
    }

    /// Items of size at least `threshold`.
    pub fn at_least(&self, threshold: f64) -> Vec<f64> {
        self.items.iter().copied().filter(|&a| a >= threshold).collect()
    }

    /// Parse the plain-text instance format: one decimal size per line,
    /// blank lines and `#` comments ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let mut items = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let x: f64 = line.parse().map_err(|_| Error::Parse {
                line: lineno + 1,
                msg: format!("not a number: {line:?}"),
            })?;
            check_size(x).map_err(|e| Error::Parse {
                line: lineno + 1,
                msg: e.to_string(),
            })?;
            items.push(x);
        }
        Ok(Self {
            items,
            sum_cache: OnceLock::new(),
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::parse(&text)
    }

    /// Serialize to the instance file format. `{:?}` on `f64` is
    /// shortest-roundtrip, so parsing the output yields identical bits.
    pub fn to_text(&self, header: Option<&str>) -> String {
        let mut out = String::with_capacity(self.items.len() * 12);
        if let Some(h) = header {
            for line in h.lines() {
                let _ = writeln!(out, "# {line}");
            }
        }
        for x in &self.items {
            let _ = writeln!(out, "{x:?}");
        }
        out
    }

    pub fn probe(&self) -> ItemProbe<'_> {
        ItemProbe {
            inst: self,
            reads: 0,
        }
    }
}

/// Counted read access to an [`Instance`].
///
/// Every item read increments `reads`; the estimators have no other path
/// to item sizes, so `reads` is an exact query count for one call.
#[derive(Debug)]
pub struct ItemProbe<'a> {
    inst: &'a Instance,
    reads: u64,
}

impl<'a> ItemProbe<'a> {
    pub fn len(&self) -> usize {
        self.inst.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inst.is_empty()
    }

    pub fn reads(&self) -> u64 {
        self.reads
    }

    /// Read the item at zero-based `index`.
    pub fn get(&mut self, index: usize) -> f64 {
        self.reads += 1;
        self.inst.items[index]
    }

    /// One uniform draw with replacement. Returns `(index, size)`.
    pub fn sample(&mut self, rng: &mut Rng) -> Result<(usize, f64)> {
        if self.inst.is_empty() {
            return Err(Error::Domain("cannot sample from an empty instance".into()));
        }
        let i = rng.index(self.inst.len());
        Ok((i, self.get(i)))
    }

    /// Sequential pass over every item, counting each read.
    pub fn scan(&mut self) -> impl Iterator<Item = f64> + '_ {
        let items = self.inst.items();
        self.reads += items.len() as u64;
        items.iter().copied()
    }
}
