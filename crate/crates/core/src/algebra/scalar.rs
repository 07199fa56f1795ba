use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::str::FromStr;

use num_traits::{Euclid, PrimInt, Signed};

/// Integer type usable as a group coordinate.
///
/// Residues in `Z/nZ` factors and unbounded coordinates in free `Z` factors
/// share this type. Blanket-implemented for every signed primitive integer.
pub trait Coord:
    PrimInt + Signed + Euclid + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
}

impl<T> Coord for T where
    T: PrimInt + Signed + Euclid + Hash + Debug + Display + FromStr + Send + Sync + 'static
{
}
