use std::collections::VecDeque;

/// Voting parameter of the `j`-th procedure: `VoteAndUpdate(0)` for
/// `j = 0`, `VoteAndUpdate(3j + 1)` otherwise.
pub fn procedure_width(j: u32) -> u32 {
    if j == 0 {
        0
    } else {
        3 * j + 1
    }
}

/// The `VoteAndUpdate` parameters executed by `CreateAdvanced(k)`, in
/// order, obtained by unrolling the recursion.
pub fn create_advanced_flattening(k: u32) -> Vec<u32> {
    fn unroll(k: u32, out: &mut Vec<u32>) {
        for _ in 0..16 {
            if k == 0 {
                out.push(0);
            } else {
                unroll(k - 1, out);
                out.push(3 * k + 1);
            }
        }
    }
    let mut out = Vec::new();
    unroll(k, &mut out);
    out
}

#[derive(Debug, Clone)]
enum Plan {
    /// Counter `N` and the procedures still owed for the current `N`.
    Predict { n: u64, pending: VecDeque<u32> },
    Fixed { calls: Vec<u32>, pos: usize },
}

/// Sequence of `VoteAndUpdate` parameters, one per completed procedure.
#[derive(Debug, Clone)]
pub struct ProcedureSchedule {
    name: String,
    plan: Plan,
}

impl ProcedureSchedule {
    /// The dimension-independent schedule: for `N = 1, 2, ...` run
    /// procedure 0, then procedures `1..=i` where `16^i` is the largest
    /// power of 16 dividing `N`.
    pub fn predict() -> Self {
        ProcedureSchedule {
            name: "predict".into(),
            plan: Plan::Predict {
                n: 0,
                pending: VecDeque::new(),
            },
        }
    }

    /// The finite schedule of `CreateAdvanced(k)`.
    pub fn create_advanced(k: u32) -> Self {
        ProcedureSchedule {
            name: format!("create-adv:{k}"),
            plan: Plan::Fixed {
                calls: create_advanced_flattening(k),
                pos: 0,
            },
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }
}

impl Iterator for ProcedureSchedule {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        match &mut self.plan {
            Plan::Predict { n, pending } => {
                if pending.is_empty() {
                    *n += 1;
                    let mut rest = *n;
                    let mut i = 0;
                    while rest % 16 == 0 {
                        rest /= 16;
                        i += 1;
                    }
                    pending.extend((0..=i).map(procedure_width));
                }
                pending.pop_front()
            }
            Plan::Fixed { calls, pos } => {
                let k = calls.get(*pos).copied();
                *pos += 1;
                k
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flattening_lengths() {
        let lens: Vec<usize> = (0..4).map(|k| create_advanced_flattening(k).len()).collect();
        assert_eq!(lens, [16, 272, 4368, 69904]);
    }

    #[test]
    fn predict_opening() {
        let first: Vec<u32> = ProcedureSchedule::predict().take(17).collect();
        assert_eq!(&first[..16], &[0; 16]);
        assert_eq!(first[16], 4);
    }

    #[test]
    fn predict_at_n_256() {
        // N = 256 is preceded by 255 values of N with 15 multiples of 16
        let before = 255 + 15;
        let calls: Vec<u32> = ProcedureSchedule::predict().skip(before).take(3).collect();
        assert_eq!(calls, [0, 4, 7]);
    }

    #[test]
    fn predict_prefixes_match_flattenings() {
        let predicted: Vec<u32> = ProcedureSchedule::predict().take(69904).collect();
        for k in 0..4 {
            let flat = create_advanced_flattening(k);
            assert_eq!(&predicted[..flat.len()], &flat[..], "k = {k}");
        }
    }

    #[test]
    fn fixed_schedule_ends() {
        assert_eq!(ProcedureSchedule::create_advanced(0).count(), 16);
    }
}
