//! Line-delimited JSON transcripts.
//!
//! The first line is a header carrying the configuration. Each round is one
//! `round` record; a `function` record precedes the first round revealing a
//! function (or a changed function under a reused id). An `end` record
//! closes the file.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{GameError, LdimStatus, Round, Termination, Transcript, TranscriptHeader};
use crate::hypotheses::{Hypothesis, Point};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Record {
    Header(TranscriptHeader),
    Function {
        id: String,
        domain: Vec<u64>,
        values: String,
    },
    Round {
        round: usize,
        x: u64,
        y_hat: u8,
        y: u8,
        mistake: bool,
        f_id: String,
        vote_width: u64,
        active_count: usize,
    },
    End {
        termination: Termination,
        rounds: usize,
        mistakes: usize,
    },
}

fn io_err(e: impl std::fmt::Display) -> GameError {
    GameError::Transcript(e.to_string())
}

pub fn write_transcript(t: &Transcript, out: &mut impl Write) -> Result<(), GameError> {
    let mut emit = |r: &Record| -> Result<(), GameError> {
        serde_json::to_writer(&mut *out, r).map_err(io_err)?;
        out.write_all(b"\n").map_err(io_err)
    };
    emit(&Record::Header(t.header.clone()))?;
    let mut current: HashMap<&str, &Arc<Hypothesis>> = HashMap::new();
    for (round, f) in t.rounds.iter().zip(&t.functions) {
        let stale = current
            .get(round.f_id.as_str())
            .is_none_or(|prev| !Arc::ptr_eq(prev, f) && ***prev != **f);
        if stale {
            emit(&Record::Function {
                id: round.f_id.clone(),
                domain: f.domain().iter().map(|p| p.0).collect(),
                values: f.bit_string(f.domain()),
            })?;
            current.insert(&round.f_id, f);
        }
        emit(&Record::Round {
            round: round.index,
            x: round.x.0,
            y_hat: round.y_hat as u8,
            y: round.y as u8,
            mistake: round.mistake,
            f_id: round.f_id.clone(),
            vote_width: round.vote_width,
            active_count: round.active_count,
        })?;
    }
    emit(&Record::End {
        termination: t.termination,
        rounds: t.rounds.len(),
        mistakes: t.mistake_count,
    })
}

pub fn read_transcript(input: impl BufRead) -> Result<Transcript, GameError> {
    let mut header = None;
    let mut functions: HashMap<String, Arc<Hypothesis>> = HashMap::new();
    let mut rounds = Vec::new();
    let mut revealed = Vec::new();
    let mut end = None;
    for (lineno, line) in input.lines().enumerate() {
        let line = line.map_err(io_err)?;
        if line.trim().is_empty() {
            continue;
        }
        let record: Record = serde_json::from_str(&line)
            .map_err(|e| GameError::Transcript(format!("line {}: {e}", lineno + 1)))?;
        match record {
            Record::Header(h) => header = Some(h),
            Record::Function { id, domain, values } => {
                let values = values.chars().map(|c| c == '1').collect();
                let f = Hypothesis::new(id.clone(), domain.into_iter().map(Point).collect(), values)
                    .map_err(io_err)?;
                functions.insert(id, Arc::new(f));
            }
            Record::Round {
                round,
                x,
                y_hat,
                y,
                mistake,
                f_id,
                vote_width,
                active_count,
            } => {
                let f = functions.get(&f_id).ok_or_else(|| {
                    GameError::Transcript(format!("round {round}: unknown function `{f_id}`"))
                })?;
                revealed.push(Arc::clone(f));
                rounds.push(Round {
                    index: round,
                    x: Point(x),
                    y_hat: y_hat != 0,
                    y: y != 0,
                    mistake,
                    f_id,
                    vote_width,
                    active_count,
                    appended: Vec::new(),
                    deleted: Vec::new(),
                });
            }
            Record::End {
                termination,
                mistakes,
                ..
            } => end = Some((termination, mistakes)),
        }
    }
    let header = header.ok_or_else(|| GameError::Transcript("missing header".into()))?;
    let (termination, mistake_count) =
        end.ok_or_else(|| GameError::Transcript("missing end record".into()))?;
    Ok(Transcript {
        header,
        rounds,
        functions: revealed,
        mistake_count,
        termination,
        ldim_status: LdimStatus::NotRequested,
    })
}
