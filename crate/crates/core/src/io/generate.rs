use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed, ToPrimitive};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::counting::Colouring;
use crate::error::{Error, Result};
use crate::linalg::Space;
use crate::rational::{self, Rational};

/// How `generate` fills a colouring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenMode {
    Uniform,
    /// `colour` on exactly `round(density·p^n)` random points, the rest
    /// uniform over the other colours.
    Sparse { colour: u8, density: Rational },
}

impl FromStr for GenMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "uniform" {
            return Ok(GenMode::Uniform);
        }
        let bad = || Error::invalid(format!("mode {s:?}: expected uniform or sparse:<colour>:<num/den>"));
        let rest = s.strip_prefix("sparse:").ok_or_else(bad)?;
        let (c, d) = rest.split_once(':').ok_or_else(bad)?;
        let colour = c.parse().map_err(|_| bad())?;
        let density = rational::parse(d)?;
        Ok(GenMode::Sparse { colour, density })
    }
}

impl fmt::Display for GenMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GenMode::Uniform => f.write_str("uniform"),
            GenMode::Sparse { colour, density } => write!(f, "sparse:{colour}:{}", rational::format(density)),
        }
    }
}

/// `q` rounded to the nearest integer, halves rounding up.
fn round_half_up(q: &Rational) -> Rational {
    let half = rational::ratio(1, 2);
    (q + half).floor()
}

pub fn generate(space: Space, r: u8, mode: &GenMode, seed: u64) -> Result<Colouring> {
    if r == 0 {
        return Err(Error::invalid("r must be at least 1"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = space.size();
    match mode {
        GenMode::Uniform => {
            let table = (0..size).map(|_| rng.gen_range(1..=r)).collect();
            Colouring::new(space, r, table)
        }
        GenMode::Sparse { colour, density } => {
            if *colour == 0 || *colour > r {
                return Err(Error::invalid(format!("colour {colour} outside 1..={r}")));
            }
            if density.is_negative() || density > &Rational::one() {
                return Err(Error::invalid(format!("density {} outside [0, 1]", rational::format(density))));
            }
            let count = sparse_count(&space, density);
            if r == 1 && count != size {
                return Err(Error::invalid("with one colour every point takes it"));
            }
            let chosen = sample(&mut rng, size, count);
            let mut table = vec![0u8; size];
            for i in chosen.iter() {
                table[i] = *colour;
            }
            for v in table.iter_mut().filter(|v| **v == 0) {
                let k = rng.gen_range(1..r);
                *v = if k >= *colour { k + 1 } else { k };
            }
            Colouring::new(space, r, table)
        }
    }
}

/// Number of points `generate` gives the sparse colour.
pub fn sparse_count(space: &Space, density: &Rational) -> usize {
    let exact = density * rational::integer(space.size() as i64);
    round_half_up(&exact).to_integer().to_usize().unwrap_or(0)
}
