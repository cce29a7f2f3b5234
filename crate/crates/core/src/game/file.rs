//! Game-definition documents.
//!
//! ```json
//! {
//!   "players": ["A", "B", "C"],
//!   "prior": { "000": "1/8", "001": "1/8", ... },
//!   "utilities": {
//!     "A": [["2/1", "0/1", ...8 action columns], ...8 type rows],
//!     "B": [...],
//!     "C": [...]
//!   }
//! }
//! ```
//!
//! Prior keys are type profiles written `x_A x_B x_C` (spaces optional).
//! Utility rows are indexed by the type profile and columns by the action
//! profile, both as `4·b_A + 2·b_B + b_C`. Rationals are `"num/den"` strings
//! (plain integers are accepted on input).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{PlayerId, Prior, TypeProfile, UtilityTable};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// Bundled copy of the example game in document form.
pub const TABLE1_JSON: &str = include_str!("../../resources/table1.json");

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GameDocument {
    players: Vec<String>,
    prior: BTreeMap<String, String>,
    utilities: BTreeMap<String, Vec<Vec<String>>>,
}

/// A parsed and validated game definition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GameDefinition {
    pub game: UtilityTable,
    pub prior: Prior,
}

impl GameDefinition {
    pub fn table1() -> Self {
        GameDefinition {
            game: UtilityTable::table1(),
            prior: Prior::uniform(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: GameDocument = serde_json::from_str(text)?;
        doc.validate()
    }

    pub fn to_json(&self) -> String {
        let prior = TypeProfile::all()
            .map(|x| (x.to_string(), self.prior.prob(x).to_string()))
            .collect();
        let utilities = PlayerId::ALL
            .into_iter()
            .map(|p| {
                let rows = TypeProfile::all()
                    .map(|x| {
                        super::ActionProfile::all()
                            .map(|y| self.game.get(p, x, y).to_string())
                            .collect()
                    })
                    .collect();
                (p.to_string(), rows)
            })
            .collect();
        let doc = GameDocument {
            players: PlayerId::ALL.iter().map(|p| p.to_string()).collect(),
            prior,
            utilities,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("document serializes");
        s.push('\n');
        s
    }
}

fn parse_rational(field: &str, s: &str) -> Result<Rational> {
    s.parse()
        .map_err(|e: Error| Error::format(field, e.to_string()))
}

impl GameDocument {
    fn validate(self) -> Result<GameDefinition> {
        if self.players != ["A", "B", "C"] {
            return Err(Error::format(
                "players",
                format!("expected [\"A\", \"B\", \"C\"], got {:?}", self.players),
            ));
        }

        let mut probs: [Option<Rational>; 8] = Default::default();
        for (key, value) in &self.prior {
            let field = format!("prior[{key:?}]");
            let x: TypeProfile = key
                .parse()
                .map_err(|e: String| Error::format(&field, e))?;
            if probs[x.index()].is_some() {
                return Err(Error::format(field, "duplicate type profile"));
            }
            probs[x.index()] = Some(parse_rational(&field, value)?);
        }
        if let Some(x) = TypeProfile::all().find(|x| probs[x.index()].is_none()) {
            return Err(Error::format("prior", format!("missing type profile {x}")));
        }
        let probs: [Rational; 8] = probs.map(Option::unwrap_or_default);
        let prior = Prior::new(probs).map_err(|e| Error::format("prior", e.to_string()))?;

        if let Some(extra) = self.utilities.keys().find(|k| !["A", "B", "C"].contains(&k.as_str())) {
            return Err(Error::format("utilities", format!("unknown player {extra:?}")));
        }
        let mut tables = Vec::with_capacity(3);
        for p in PlayerId::ALL {
            let key = p.to_string();
            let rows = self
                .utilities
                .get(&key)
                .ok_or_else(|| Error::format("utilities", format!("missing player {key}")))?;
            if rows.len() != 8 {
                return Err(Error::format(
                    format!("utilities.{key}"),
                    format!("expected 8 type rows, got {}", rows.len()),
                ));
            }
            let mut table = Vec::with_capacity(8);
            for (xi, row) in rows.iter().enumerate() {
                if row.len() != 8 {
                    return Err(Error::format(
                        format!("utilities.{key}[{xi}]"),
                        format!("expected 8 action columns, got {}", row.len()),
                    ));
                }
                let parsed = row
                    .iter()
                    .enumerate()
                    .map(|(yi, s)| parse_rational(&format!("utilities.{key}[{xi}][{yi}]"), s))
                    .collect::<Result<Vec<_>>>()?;
                table.push(parsed);
            }
            tables.push(table);
        }
        let game =
            UtilityTable::from_fn(|p, x, y| tables[p.index()][x.index()][y.index()].clone());
        Ok(GameDefinition { game, prior })
    }
}
