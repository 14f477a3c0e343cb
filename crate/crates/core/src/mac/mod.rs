//! MAC-layer primitives: frame type/subtype codec, frame sizes, inter-frame
//! spaces and binary exponential backoff.

mod frame;
mod timing;

pub use frame::{
    decode_type_subtype, encode_type_subtype, frame_octet_length, frame_table,
    frame_table_csv, parse_bits, FrameKind, FrameType, MacFrameMeta, FCS_OCTETS,
    HEADER_OCTETS, MAX_BODY_OCTETS,
};
pub use timing::{
    backoff_draw, difs, eifs, next_stage, pifs, round_us, BackoffState, Outcome, TimingParams,
};
