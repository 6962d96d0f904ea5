//! Linear torus actions on `C^(n+1)` and the induced relation in `K_T(P^n)`.

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::laurent::{Character, LaurentExpr};
use super::yrational::YRational;
use crate::error::{Error, Result};

/// One-parameter subgroup `z -> diag(z^w_1, ..., z^w_k)` acting on
/// `C^(n+1)` as `z^q * Id`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ScalarEmbedding {
    pub weights: Vec<i64>,
    pub q: i64,
}

/// A rank-`k` torus acting on `C^(n+1)` through characters `b_1..b_{n+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusAction {
    n: usize,
    rank: usize,
    characters: Vec<Character>,
    scalar: Option<ScalarEmbedding>,
}

impl TorusAction {
    /// Validates character count and ranks, and that every character has
    /// scalar weight exactly `q` when an embedding is given.
    pub fn new(rank: usize, characters: Vec<Character>, scalar: Option<ScalarEmbedding>) -> Result<Self> {
        if characters.is_empty() {
            return Err(Error::InvalidAction("at least one character is required".into()));
        }
        if let Some(bad) = characters.iter().find(|c| c.rank() != rank) {
            return Err(Error::InvalidAction(format!(
                "character {bad} has rank {} but the torus has rank {rank}",
                bad.rank()
            )));
        }
        if let Some(s) = &scalar {
            if s.q == 0 {
                return Err(Error::InvalidAction("scalar exponent q must be nonzero".into()));
            }
            if s.weights.len() != rank {
                return Err(Error::InvalidAction(format!(
                    "{} scalar weights for a rank {rank} torus",
                    s.weights.len()
                )));
            }
            for (i, c) in characters.iter().enumerate() {
                let w = c.pair(&s.weights);
                if w != s.q {
                    return Err(Error::InvalidAction(format!(
                        "character b{} = {c} has scalar weight {w}, expected q = {}",
                        i + 1,
                        s.q
                    )));
                }
            }
        }
        Ok(TorusAction {
            n: characters.len() - 1,
            rank,
            characters,
            scalar,
        })
    }

    /// The rank-0 torus on `C^(n+1)`.
    pub fn trivial(n: usize) -> Self {
        TorusAction {
            n,
            rank: 0,
            characters: vec![Character::trivial(0); n + 1],
            scalar: None,
        }
    }

    /// Rank-`(n+1)` torus with `b_i = a_i`, containing the scalars with
    /// weights `(1, ..., 1)` and `q = 1`.
    pub fn diagonal(n: usize) -> Self {
        let rank = n + 1;
        let characters = (0..rank).map(|j| Character::basis(rank, j)).collect();
        Self::new(
            rank,
            characters,
            Some(ScalarEmbedding {
                weights: vec![1; rank],
                q: 1,
            }),
        )
        .expect("diagonal action is valid")
    }

    /// Rank-1 torus acting by scalars: every `b_i = a1`.
    pub fn standard_scalar(n: usize) -> Self {
        Self::new(
            1,
            vec![Character::basis(1, 0); n + 1],
            Some(ScalarEmbedding { weights: vec![1], q: 1 }),
        )
        .expect("scalar action is valid")
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn characters(&self) -> &[Character] {
        &self.characters
    }

    pub fn scalar(&self) -> Option<&ScalarEmbedding> {
        self.scalar.as_ref()
    }

    pub fn with_scalar(&self, scalar: Option<ScalarEmbedding>) -> Result<Self> {
        Self::new(self.rank, self.characters.clone(), scalar)
    }

    /// True when every character is trivial, so `K_T(P^n) = K(P^n)[a^±]`.
    pub fn is_trivial(&self) -> bool {
        self.characters.iter().all(Character::is_trivial)
    }

    /// `1 - t / b_i`.
    pub fn factor(&self, i: usize) -> LaurentExpr {
        let one = LaurentExpr::one(self.rank);
        let t_over_b = LaurentExpr::character_t(&self.characters[i].inverse(), 1, YRational::one());
        &one - &t_over_b
    }

    /// `1 + y t / b_i`.
    pub fn tangent_factor(&self, i: usize) -> LaurentExpr {
        let one = LaurentExpr::one(self.rank);
        let yt_over_b = LaurentExpr::character_t(&self.characters[i].inverse(), 1, YRational::y());
        &one + &yt_over_b
    }

    /// The relation `prod_i (1 - t/b_i)`, which is also the class of the
    /// origin in `K_{Gamma x T}(C^(n+1))`.
    pub fn relation(&self) -> LaurentExpr {
        (0..=self.n).fold(LaurentExpr::one(self.rank), |acc, i| &acc * &self.factor(i))
    }

    /// The class of the origin in `K_T(C^(n+1))`: `prod_i (1 - 1/b_i)`.
    pub fn origin_class(&self) -> LaurentExpr {
        self.relation().at_t_one()
    }

    /// Parses the JSON form `{"rank":k,"characters":[...],"scalar":{...}}`.
    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        serde_json::from_value(v.clone()).map_err(|e| Error::InvalidAction(e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct ActionWire {
    rank: usize,
    characters: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    scalar: Option<ScalarEmbedding>,
}

impl Serialize for TorusAction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ActionWire {
            rank: self.rank,
            characters: self.characters.iter().map(ToString::to_string).collect(),
            scalar: self.scalar.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for TorusAction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = ActionWire::deserialize(d)?;
        let characters = w
            .characters
            .iter()
            .map(|c| Character::parse(c, w.rank))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        TorusAction::new(w.rank, characters, w.scalar).map_err(serde::de::Error::custom)
    }
}
