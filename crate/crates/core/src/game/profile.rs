use std::fmt;

use serde::{Deserialize, Serialize};

/// One of the three players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum PlayerId {
    A,
    B,
    C,
}

impl PlayerId {
    pub const ALL: [PlayerId; 3] = [PlayerId::A, PlayerId::B, PlayerId::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> PlayerId {
        Self::ALL[i]
    }

    /// The two other players, in canonical order.
    pub fn others(self) -> [PlayerId; 2] {
        match self {
            PlayerId::A => [PlayerId::B, PlayerId::C],
            PlayerId::B => [PlayerId::A, PlayerId::C],
            PlayerId::C => [PlayerId::A, PlayerId::B],
        }
    }
}

impl fmt::Display for PlayerId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            PlayerId::A => "A",
            PlayerId::B => "B",
            PlayerId::C => "C",
        };
        f.write_str(s)
    }
}

/// Exchange of two players' slots.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Transposition(pub PlayerId, pub PlayerId);

impl Transposition {
    pub const ALL: [Transposition; 3] = [
        Transposition(PlayerId::A, PlayerId::B),
        Transposition(PlayerId::A, PlayerId::C),
        Transposition(PlayerId::B, PlayerId::C),
    ];

    pub fn apply(self, p: PlayerId) -> PlayerId {
        if p == self.0 {
            self.1
        } else if p == self.1 {
            self.0
        } else {
            p
        }
    }

    /// The player left in place.
    pub fn fixed(self) -> PlayerId {
        PlayerId::ALL
            .into_iter()
            .find(|&p| p != self.0 && p != self.1)
            .expect("three players")
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}<->{}", self.0, self.1)
    }
}

macro_rules! bit_triple {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name(u8);

        impl $name {
            pub const COUNT: usize = 8;

            pub fn new(a: u8, b: u8, c: u8) -> Self {
                assert!(a < 2 && b < 2 && c < 2, "profile components must be bits");
                $name((a << 2) | (b << 1) | c)
            }

            /// Canonical index `4·a + 2·b + c`.
            pub fn from_index(i: usize) -> Self {
                assert!(i < 8, "profile index out of range");
                $name(i as u8)
            }

            pub fn index(self) -> usize {
                self.0 as usize
            }

            pub fn all() -> impl Iterator<Item = Self> {
                (0..8u8).map($name)
            }

            pub fn bit(self, p: PlayerId) -> u8 {
                (self.0 >> (2 - p.index())) & 1
            }

            pub fn bits(self) -> [u8; 3] {
                [self.bit(PlayerId::A), self.bit(PlayerId::B), self.bit(PlayerId::C)]
            }

            pub fn with(self, p: PlayerId, bit: u8) -> Self {
                let mut b = self.bits();
                b[p.index()] = bit;
                $name::new(b[0], b[1], b[2])
            }

            pub fn flipped(self, p: PlayerId) -> Self {
                self.with(p, 1 - self.bit(p))
            }

            pub fn transposed(self, t: Transposition) -> Self {
                let b = self.bits();
                let mut out = b;
                out[t.0.index()] = b[t.1.index()];
                out[t.1.index()] = b[t.0.index()];
                $name::new(out[0], out[1], out[2])
            }

            pub fn count_zeros(self) -> u32 {
                3 - self.0.count_ones()
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let [a, b, c] = self.bits();
                write!(f, "{a}{b}{c}")
            }
        }

        impl Serialize for $name {
            fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
                s.collect_str(self)
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
                let s = String::deserialize(d)?;
                s.parse().map_err(serde::de::Error::custom)
            }
        }

        impl std::str::FromStr for $name {
            type Err = String;

            /// Parses `"011"` or `"0 1 1"`.
            fn from_str(s: &str) -> Result<Self, String> {
                let bits: Vec<u8> = s
                    .chars()
                    .filter(|c| !c.is_whitespace())
                    .map(|c| match c {
                        '0' => Ok(0),
                        '1' => Ok(1),
                        other => Err(format!("unexpected character {other:?}")),
                    })
                    .collect::<Result<_, _>>()?;
                match bits[..] {
                    [a, b, c] => Ok($name::new(a, b, c)),
                    _ => Err(format!("expected three bits, got {s:?}")),
                }
            }
        }
    };
}

bit_triple!(
    /// Joint types `(x_A, x_B, x_C)`.
    TypeProfile
);
bit_triple!(
    /// Joint actions `(y_A, y_B, y_C)`.
    ActionProfile
);
