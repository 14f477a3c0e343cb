//! The three schedulers: HTFA sub-channel membership, ERA load-classified
//! RU assignment and PRS proportional SA/RA zoning.

mod assignment;
mod era;
mod htfa;
mod prs;
mod station;

pub use assignment::{Grant, ScheduleAssignment, Zone};
pub use era::{era_assign, era_classify, EraQueues, LoadClass};
pub use htfa::{htfa_distribute, htfa_join, htfa_leave, HtfaState};
pub use prs::{
    prs_initial, prs_initial_with, prs_place, prs_revised, prs_schedule, PrsPlan, PrsRevision,
    TRounding,
};
pub use station::{AccessMode, Station, StationId};
