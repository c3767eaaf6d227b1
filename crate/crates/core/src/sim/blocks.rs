//! Column allocation across the nine business-plan blocks and the
//! per-column generation recipes.

use crate::panel::Block;

use super::environment::EnvironmentTimeline;
use super::environment::ENV_SERIES_NAMES;
use super::options::ControlOption;
use super::rng::{substream, uniform, LANE_PARAMS};
use super::SimConfig;

/// Fixed share of columns per block 0..=9, percent. Sums to 100.
pub const BLOCK_WEIGHTS: [usize; 10] = [6, 10, 14, 8, 14, 10, 10, 14, 6, 8];

/// Blocks carrying the seasonal-inflation factor (environment, products,
/// logistics).
pub(crate) fn seasonal_block(block: Block) -> bool {
    matches!(block, Block::Environment | Block::Products | Block::Logistics)
}

/// Blocks hit by the equipment sanctions shock (equipment and finance).
pub(crate) fn sanction_block(block: Block) -> bool {
    matches!(block, Block::Equipment | Block::Finance)
}

/// Largest-remainder allocation of n columns across the ten blocks,
/// ties resolved toward the lower block index. Always sums to n.
pub fn block_allocation(n: usize) -> [usize; 10] {
    let mut alloc = [0usize; 10];
    let mut remainders: Vec<(usize, usize)> = Vec::with_capacity(10); // (remainder*?, block)
    let mut assigned = 0;
    for (b, &w) in BLOCK_WEIGHTS.iter().enumerate() {
        let exact = n * w; // in units of 1/100
        alloc[b] = exact / 100;
        assigned += alloc[b];
        remainders.push((exact % 100, b));
    }
    remainders.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for &(_, b) in remainders.iter().take(n - assigned) {
        alloc[b] += 1;
    }
    alloc
}

/// Catalog entry for one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockInfo {
    pub block: Block,
    pub name: &'static str,
    pub columns: usize,
}

/// The nine-block catalog (plus block 0) with the column allocation for a
/// panel of the given width.
pub fn describe_blocks(n_parameters: usize) -> Vec<BlockInfo> {
    let alloc = block_allocation(n_parameters);
    (0..10)
        .map(|b| {
            let block = Block::from_ordinal(b).unwrap();
            BlockInfo { block, name: block.name(), columns: alloc[b] }
        })
        .collect()
}

fn ramp_in(t: i64, start: i64, len: i64) -> f64 {
    if t < start {
        0.0
    } else {
        (((t - start + 1) as f64) / len as f64).min(1.0)
    }
}

/// Triangular wave in [−1, 1] with the given period and phase.
fn tri(t: i64, period: i64, phase: i64) -> f64 {
    let pos = (t + phase).rem_euclid(period) as f64 / period as f64;
    4.0 * (pos - 0.5).abs() - 1.0
}

/// Remaining balance of an annuity loan: principal drawn over months 1..=3,
/// grace through month 12, then equal payments over `term` months at the
/// monthly rate.
fn credit_balance(t: i64, principal: f64, monthly_rate: f64, term: i64) -> f64 {
    if t <= 0 {
        return 0.0;
    }
    if t <= 3 {
        return principal * t as f64 / 3.0;
    }
    if t <= 12 {
        return principal;
    }
    let q = (t - 12).min(term);
    if monthly_rate == 0.0 {
        return principal * (1.0 - q as f64 / term as f64);
    }
    let grown = (1.0 + monthly_rate).powi(term as i32);
    let at_q = (1.0 + monthly_rate).powi(q as i32);
    (principal * (grown - at_q) / (grown - 1.0)).max(0.0)
}

/// Deterministic base series (before noise and common factors) plus label
/// for one column.
pub(crate) fn column_base(
    option: &ControlOption,
    config: &SimConfig,
    env: &EnvironmentTimeline,
    block: Block,
    j: usize,
    global_index: usize,
) -> (String, Vec<f64>) {
    let t_len = config.horizon_t;
    let mut params = substream(config.seed, LANE_PARAMS, global_index as u64);
    let scale = 10.0 * (1.0 + 99.0 * uniform(&mut params));
    let shape = uniform(&mut params);
    let volscale = option.logging_volume / 800.0;
    let am = option.asset_month();
    let ji = j as i64;

    let (role, base): (&str, Box<dyn Fn(i64) -> f64>) = match block {
        Block::Environment => {
            let series = j % 9;
            let mult = 0.5 + shape;
            (
                ENV_SERIES_NAMES[series],
                Box::new(move |t| env.series_value(series, t) * mult),
            )
        }
        Block::Investment => {
            let period = 8 + ji % 5;
            let phase = ji % 11;
            (
                "capex",
                Box::new(move |t| scale * (1.0 + 0.02 * tri(t, period, phase))),
            )
        }
        Block::Equipment => {
            let period = 5 + ji % 5;
            let phase = ji % 7;
            (
                "machine_hours",
                Box::new(move |t| {
                    scale
                        * ramp_in(t, am, 4)
                        * env.series_value(8, t)
                        * (1.0 + 0.02 * tri(t, period, phase))
                }),
            )
        }
        Block::Depreciation => {
            let life = 96 + 12 * (ji % 5);
            (
                "depreciation",
                Box::new(move |t| {
                    if t < am {
                        0.0
                    } else {
                        scale * (1.0 - (t - am) as f64 / life as f64).max(0.0)
                    }
                }),
            )
        }
        Block::Products => match j % 3 {
            0 => {
                let start = option.sawlog_sale_start;
                let ban = if option.id >= 2 { 0.75 } else { 1.0 };
                (
                    "sawlog_revenue",
                    Box::new(move |t| scale * volscale * ban * ramp_in(t, start, 3)),
                )
            }
            1 => {
                let start = option.products_sale_start;
                ("product_revenue", Box::new(move |t| scale * ramp_in(t, start, 3)))
            }
            _ => {
                let start = option.products_sale_start;
                (
                    "product_volume",
                    Box::new(move |t| scale * volscale * ramp_in(t, start, 3)),
                )
            }
        },
        Block::Logistics => {
            // utilization wobble grows with the hauled volume
            let period = 3 + ji % 3;
            let phase = ji % 5;
            (
                "barge_delivery",
                Box::new(move |t| {
                    if env.river_navigation_open[(t - 1) as usize] {
                        scale * volscale * (1.0 + 0.015 * volscale * tri(t, period, phase))
                    } else {
                        0.0
                    }
                }),
            )
        }
        Block::Staffing => {
            let period = 6 + ji % 4;
            let phase = ji % 5;
            (
                "headcount",
                Box::new(move |t| {
                    scale * volscale * (1.0 + 0.01 * volscale * tri(t, period, phase))
                }),
            )
        }
        Block::Finance => {
            let monthly_rate = option.rate / 100.0 / 12.0;
            // larger credits amortize over longer terms
            let term = 60 + option.credit_share.round() as i64 + 12 * (ji % 3);
            match j % 4 {
                0 => {
                    let principal = scale * option.credit_share / 100.0;
                    (
                        "credit_balance",
                        Box::new(move |t| credit_balance(t, principal, monthly_rate, term)),
                    )
                }
                1 => {
                    let principal = scale * option.credit_share / 100.0;
                    (
                        "interest_paid",
                        Box::new(move |t| {
                            monthly_rate * credit_balance(t, principal, monthly_rate, term)
                        }),
                    )
                }
                2 => {
                    let owner = scale * option.owner_share / 100.0;
                    let horizon = t_len;
                    (
                        "owner_funds",
                        Box::new(move |t| {
                            owner * (1.0 - 0.4 * (t - 1) as f64 / horizon.max(2) as f64)
                        }),
                    )
                }
                _ => {
                    let level = scale * option.subsidy_share / 100.0;
                    (
                        "subsidy_inflow",
                        Box::new(move |t| level * if (t + ji) % 3 == 0 { 1.0 } else { 0.15 }),
                    )
                }
            }
        }
        Block::Ecology => {
            // environmental effects phase in after production, staggered so
            // the start events spread across ticks
            let start = option.products_sale_start + 1 + ji % 7;
            let period = 7 + ji % 3;
            let phase = ji % 4;
            (
                "emissions",
                Box::new(move |t| {
                    scale * volscale * ramp_in(t, start, 3) * (1.0 + 0.01 * tri(t, period, phase))
                }),
            )
        }
        Block::Engineering => {
            let end = am + 12 + 2 * (ji % 6);
            (
                "engineering_usnr",
                Box::new(move |t| {
                    let stage = if t <= end { 1.0 } else { 0.3 };
                    scale * ramp_in(t, am, 2) * stage
                }),
            )
        }
        Block::Unassigned => unreachable!("generator only emits blocks 0..=9"),
    };

    let label = format!("{}_{:04}", role, global_index + 1);
    let series = (1..=t_len).map(&*base).collect();
    (label, series)
}
