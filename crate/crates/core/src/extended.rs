use std::cmp::Ordering;
use std::fmt;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A non-negative integer or infinity.
///
/// Serialized as a JSON number, or the string `"inf"` for [`Extended::Infinite`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Extended {
    Finite(usize),
    Infinite,
}

impl Extended {
    pub fn finite(self) -> Option<usize> {
        match self {
            Extended::Finite(v) => Some(v),
            Extended::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        self == Extended::Infinite
    }

    /// `self > value`, with infinity above every integer.
    pub fn exceeds(self, value: usize) -> bool {
        match self {
            Extended::Finite(v) => v > value,
            Extended::Infinite => true,
        }
    }
}

impl PartialOrd for Extended {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Extended {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Extended::Finite(a), Extended::Finite(b)) => a.cmp(b),
            (Extended::Finite(_), Extended::Infinite) => Ordering::Less,
            (Extended::Infinite, Extended::Finite(_)) => Ordering::Greater,
            (Extended::Infinite, Extended::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Extended {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Extended::Finite(v) => write!(f, "{v}"),
            Extended::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for Extended {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Extended::Finite(v) => serializer.serialize_u64(*v as u64),
            Extended::Infinite => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for Extended {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtendedVisitor;

        impl Visitor<'_> for ExtendedVisitor {
            type Value = Extended;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a non-negative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Extended, E> {
                Ok(Extended::Finite(v as usize))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Extended, E> {
                usize::try_from(v)
                    .map(Extended::Finite)
                    .map_err(|_| E::custom("negative value"))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Extended, E> {
                match v {
                    "inf" | "infinity" => Ok(Extended::Infinite),
                    other => Err(E::custom(format!("unexpected string {other:?}"))),
                }
            }
        }

        deserializer.deserialize_any(ExtendedVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_json() {
        assert!(Extended::Infinite > Extended::Finite(usize::MAX));
        assert!(Extended::Infinite.exceeds(2));
        assert!(!Extended::Finite(2).exceeds(2));
        assert_eq!(serde_json::to_string(&Extended::Finite(3)).unwrap(), "3");
        assert_eq!(serde_json::to_string(&Extended::Infinite).unwrap(), "\"inf\"");
        let back: Extended = serde_json::from_str("\"inf\"").unwrap();
        assert_eq!(back, Extended::Infinite);
        let back: Extended = serde_json::from_str("7").unwrap();
        assert_eq!(back, Extended::Finite(7));
    }
}
