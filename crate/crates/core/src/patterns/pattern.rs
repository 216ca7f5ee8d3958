use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::rado::{check_column_conditions, RadoCertificate};
use super::system::LinearSystem;
use crate::counting::Colouring;
use crate::error::{Error, Result};
use crate::linalg::{check_point, FieldMatrix, PointVector, PrimeField};

/// Largest colouring family that may be listed explicitly.
pub const MAX_FAMILY: usize = 1_000_000;

/// Largest form count a combined pattern may have.
pub const MAX_COMBINED_FORMS: usize = 64;

/// A set of colourings `χ: [m] → [r]`, colours numbered from 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ColouringFamily {
    Explicit(BTreeSet<Vec<u8>>),
    /// Tuples made of consecutive blocks, accepted when at least one block
    /// lies in its own family. Positions past a block's own width are padding
    /// and take any colour.
    Joint(Vec<JointBlock>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JointBlock {
    pub offset: usize,
    pub width: usize,
    pub family: Arc<ColouringFamily>,
}

impl ColouringFamily {
    pub fn contains(&self, chi: &[u8]) -> bool {
        match self {
            ColouringFamily::Explicit(set) => set.contains(chi),
            ColouringFamily::Joint(blocks) => blocks
                .iter()
                .any(|b| b.family.contains(&chi[b.offset..b.offset + b.width])),
        }
    }

    /// Lists every member, failing above [`MAX_FAMILY`].
    pub fn materialize(&self, r: u8, m: usize) -> Result<BTreeSet<Vec<u8>>> {
        if let ColouringFamily::Explicit(set) = self {
            return Ok(set.clone());
        }
        let total = (u128::from(r)).checked_pow(m as u32).unwrap_or(u128::MAX);
        if total > 16 * MAX_FAMILY as u128 {
            return Err(Error::CapExceeded {
                requested: total,
                cap: 16 * MAX_FAMILY as u64,
            });
        }
        let mut out = BTreeSet::new();
        let mut chi = vec![1u8; m];
        loop {
            if self.contains(&chi) {
                out.insert(chi.clone());
                if out.len() > MAX_FAMILY {
                    return Err(Error::CapExceeded {
                        requested: total,
                        cap: MAX_FAMILY as u64,
                    });
                }
            }
            let mut pos = m;
            loop {
                if pos == 0 {
                    return Ok(out);
                }
                pos -= 1;
                if chi[pos] < r {
                    chi[pos] += 1;
                    break;
                }
                chi[pos] = 1;
            }
        }
    }
}

/// A linear system together with the colourings that count as instances.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pattern {
    system: LinearSystem,
    r: u8,
    colourings: ColouringFamily,
}

/// Text form of a pattern: keys in this order, colours from 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PatternDoc {
    pub p: u32,
    pub r: u8,
    pub forms: Vec<Vec<i64>>,
    pub colourings: Vec<Vec<u8>>,
}

impl Pattern {
    pub fn new(system: LinearSystem, r: u8, colourings: ColouringFamily) -> Result<Self> {
        if r == 0 {
            return Err(Error::invalid("a pattern needs at least one colour"));
        }
        if let ColouringFamily::Explicit(set) = &colourings {
            for chi in set {
                if chi.len() != system.m() {
                    return Err(Error::DimensionMismatch {
                        expected: system.m(),
                        found: chi.len(),
                    });
                }
                if chi.iter().any(|&c| c == 0 || c > r) {
                    return Err(Error::invalid(format!("colouring {chi:?} uses a colour outside 1..={r}")));
                }
            }
        }
        Ok(Pattern { system, r, colourings })
    }

    /// All forms coloured `colour`.
    pub fn monochromatic(system: LinearSystem, r: u8, colour: u8) -> Result<Self> {
        let chi = vec![colour; system.m()];
        Self::new(system, r, ColouringFamily::Explicit([chi].into()))
    }

    /// Every monochromatic colouring.
    pub fn any_monochromatic(system: LinearSystem, r: u8) -> Result<Self> {
        let set = (1..=r).map(|c| vec![c; system.m()]).collect();
        Self::new(system, r, ColouringFamily::Explicit(set))
    }

    pub fn from_doc(doc: &PatternDoc) -> Result<Self> {
        let field = PrimeField::new(doc.p)?;
        let system = LinearSystem::build(field, &doc.forms)?;
        Self::new(system, doc.r, ColouringFamily::Explicit(doc.colourings.iter().cloned().collect()))
    }

    pub fn to_doc(&self) -> Result<PatternDoc> {
        let forms = (0..self.system.m())
            .map(|i| self.system.forms().row(i).iter().map(|&v| i64::from(v)).collect())
            .collect();
        Ok(PatternDoc {
            p: u32::from(self.system.field().p()),
            r: self.r,
            forms,
            colourings: self.colourings.materialize(self.r, self.system.m())?.into_iter().collect(),
        })
    }

    pub fn system(&self) -> &LinearSystem {
        &self.system
    }

    pub fn r(&self) -> u8 {
        self.r
    }

    pub fn colourings(&self) -> &ColouringFamily {
        &self.colourings
    }

    pub fn m(&self) -> usize {
        self.system.m()
    }

    /// Whether the value tuple `z` (point indices) is an instance under `phi`.
    pub fn is_instance_indices(&self, phi: &Colouring, z: &[usize]) -> bool {
        let space = phi.space();
        if z.len() != self.m() || !self.system.is_value_tuple(&space, z) {
            return false;
        }
        let chi: Vec<u8> = z.iter().map(|&x| phi.colour(x)).collect();
        self.colourings.contains(&chi)
    }
}

/// `K·tuple = 0` and the colours of the tuple form a member of `X`.
pub fn is_instance(pat: &Pattern, phi: &Colouring, tuple: &[PointVector]) -> bool {
    let space = phi.space();
    if tuple.len() != pat.m() || tuple.iter().any(|x| check_point(space.field(), space.n(), x).is_err()) {
        return false;
    }
    let z: Vec<usize> = tuple.iter().map(PointVector::index).collect();
    pat.is_instance_indices(phi, &z)
}

/// Certificate for the dependency matrix of the pattern, if one exists.
pub fn is_partition_regular(pat: &Pattern) -> Result<Option<RadoCertificate>> {
    check_column_conditions(pat.system().dependencies())
}

/// Joint pattern: block-diagonal dependency matrix built from the patterns'
/// dependency matrices padded to a common shape, accepting a tuple when some
/// block carries an instance colouring of its own pattern.
pub fn combine_patterns(pats: &[Pattern]) -> Result<Pattern> {
    let first = pats.first().ok_or_else(|| Error::invalid("nothing to combine"))?;
    let field = first.system().field();
    let r = first.r();
    for p in pats {
        if p.system().field() != field {
            return Err(Error::FieldMismatch(field.p(), p.system().field().p()));
        }
        if p.r() != r {
            return Err(Error::invalid("patterns use different colour counts"));
        }
    }
    let rows = pats.iter().map(|p| p.system().dependencies().rows()).max().unwrap_or(0);
    let cols = pats.iter().map(|p| p.m()).max().unwrap_or(0);
    let total = pats.len() * cols;
    if total > MAX_COMBINED_FORMS {
        return Err(Error::invalid(format!("combined pattern would have {total} forms")));
    }
    let blocks: Vec<&FieldMatrix> = pats.iter().map(|p| p.system().dependencies()).collect();
    let a = FieldMatrix::block_diagonal(field, &blocks, rows, cols);
    let system = LinearSystem::from_dependency(&a);
    let joint = pats
        .iter()
        .enumerate()
        .map(|(i, p)| JointBlock {
            offset: i * cols,
            width: p.m(),
            family: Arc::new(p.colourings().clone()),
        })
        .collect();
    Pattern::new(system, r, ColouringFamily::Joint(joint))
}
