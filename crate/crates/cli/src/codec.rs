//! A single interface over the RS and folded RS codes.

use gr_codes::frs::{DecodeOptions, DecodeStatus, FoldedWord, FrsSpec};
use gr_codes::rs::{johnson_radius, RsSpec};
use gr_codes::{RingParams, RingPoly};
use rand::Rng;
use serde_json::{json, Value};

use crate::channel;
use crate::config::{CodeKind, RunConfig};
use crate::formats;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Word {
    Rs(Vec<gr_codes::RingElement>),
    Frs(FoldedWord),
}

pub enum Codec {
    Rs(RsSpec),
    Frs(FrsSpec),
}

/// One decoder run, ready for reporting.
pub struct Decoded {
    pub list: Vec<(RingPoly, usize)>,
    /// Extra report fields (interpolation parameters, module).
    pub detail: Value,
    pub complete: bool,
}

impl Codec {
    pub fn from_config(cfg: &RunConfig) -> Result<Self, CliError> {
        let ring = cfg.ring()?;
        Ok(match cfg.code {
            CodeKind::Rs => Codec::Rs(RsSpec::new(ring, cfg.n, cfg.k)?),
            CodeKind::Frs => {
                let m = cfg.m.ok_or_else(|| CliError::validation("frs config needs m".into()))?;
                Codec::Frs(FrsSpec::new(ring, cfg.n, m, cfg.k, cfg.s())?)
            }
        })
    }

    pub fn ring(&self) -> &RingParams {
        match self {
            Codec::Rs(c) => &c.ring,
            Codec::Frs(c) => &c.ring,
        }
    }

    pub fn k(&self) -> usize {
        match self {
            Codec::Rs(c) => c.k,
            Codec::Frs(c) => c.k,
        }
    }

    pub fn positions(&self) -> usize {
        match self {
            Codec::Rs(c) => c.n,
            Codec::Frs(c) => c.num_columns(),
        }
    }

    pub fn encode(&self, msg: &RingPoly) -> Result<Word, CliError> {
        Ok(match self {
            Codec::Rs(c) => Word::Rs(c.encode(msg)?),
            Codec::Frs(c) => Word::Frs(c.encode(msg)?),
        })
    }

    pub fn parse(&self, text: &str) -> Result<Word, CliError> {
        let word = match self {
            Codec::Rs(c) => Word::Rs(formats::parse_symbols(&c.ring, text)?),
            Codec::Frs(c) => Word::Frs(formats::parse_folded(&c.ring, text, c.m)?),
        };
        let len = match &word {
            Word::Rs(w) => w.len(),
            Word::Frs(w) => w.num_columns(),
        };
        if len != self.positions() {
            return Err(CliError::validation(format!("word has {len} positions, code has {}", self.positions())));
        }
        Ok(word)
    }

    pub fn write(word: &Word) -> String {
        match word {
            Word::Rs(w) => formats::write_symbols(w),
            Word::Frs(w) => formats::write_folded(w),
        }
    }

    pub fn corrupt<R: Rng>(&self, word: &mut Word, e: usize, rng: &mut R) -> Result<Vec<usize>, CliError> {
        if e > self.positions() {
            return Err(CliError::validation(format!("e = {e} exceeds {} positions", self.positions())));
        }
        Ok(match word {
            Word::Rs(w) => channel::corrupt_symbols(self.ring(), w, e, rng),
            Word::Frs(w) => channel::corrupt_columns(self.ring(), w, e, rng),
        })
    }

    pub fn agreement(&self, a: &Word, b: &Word) -> usize {
        match (a, b) {
            (Word::Rs(x), Word::Rs(y)) => x.iter().zip(y).filter(|(u, v)| u == v).count(),
            (Word::Frs(x), Word::Frs(y)) => x.agreement(y),
            _ => 0,
        }
    }

    /// Decodes with the error count / agreement of `cfg`.
    pub fn decode(&self, cfg: &RunConfig, word: &Word) -> Result<Decoded, CliError> {
        match (self, word) {
            (Codec::Rs(c), Word::Rs(y)) => {
                let res = c.list_decode_with_cap(y, cfg.errors()?, cfg.max_roots())?;
                Ok(Decoded {
                    list: res.candidates.into_iter().map(|x| (x.message, x.agreement)).collect(),
                    detail: json!({ "r": res.r, "dQ": res.d_q, "t": res.t }),
                    complete: true,
                })
            }
            (Codec::Frs(c), Word::Frs(y)) => {
                let opts = DecodeOptions {
                    enumeration_cap: cfg.max_enumeration(),
                    recursion_cap: cfg.max_roots(),
                    ..Default::default()
                };
                let res = c.list_decode_with(y, cfg.agreement()?, opts)?;
                let module = &res.module;
                Ok(Decoded {
                    list: res.candidates.into_iter().map(|x| (x.message, x.agreement)).collect(),
                    detail: json!({
                        "D": res.d,
                        "t": res.t,
                        "status": res.status,
                        "module": {
                            "rank": module.rank(),
                            "scale": module.scale_exponent,
                            "base": module.base,
                            "basis": module.basis,
                        },
                    }),
                    complete: res.status == DecodeStatus::Complete,
                })
            }
            _ => Err(CliError::validation("word does not match the code".into())),
        }
    }

    /// The decoding radius the decoder accepts, as an error count.
    pub fn max_errors(&self) -> usize {
        match self {
            Codec::Rs(c) => johnson_radius(c.n, c.min_distance()),
            Codec::Frs(c) => c.num_columns().saturating_sub(c.min_agreement(c.choose_d())),
        }
    }

    /// Message coefficients padded to `k` symbols.
    pub fn message_json(&self, msg: &RingPoly) -> Value {
        let ring = self.ring();
        let coeffs: Vec<_> = (0..self.k()).map(|i| msg.coeff(i).cloned().unwrap_or_else(|| ring.zero())).collect();
        json!(coeffs)
    }

    pub fn params_json(&self, cfg: &RunConfig) -> Value {
        let mut v = json!({
            "ring": self.ring().descriptor(),
            "code": cfg.code,
            "n": cfg.n,
            "k": cfg.k,
        });
        if let Codec::Frs(c) = self {
            v["m"] = json!(c.m);
            v["s"] = json!(c.s);
        }
        if let Some(e) = cfg.e {
            v["e"] = json!(e);
        }
        if let Some(t) = cfg.t {
            v["t"] = json!(t);
        }
        v
    }
}
