use crate::error::MacError;

pub const HEADER_OCTETS: usize = 30;
pub const FCS_OCTETS: usize = 4;
pub const MAX_BODY_OCTETS: usize = 2312;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameType {
    Management,
    Control,
    Data,
}

impl FrameType {
    pub fn bits(self) -> u8 {
        match self {
            FrameType::Management => 0b00,
            FrameType::Control => 0b01,
            FrameType::Data => 0b10,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameType::Management => "Management",
            FrameType::Control => "Control",
            FrameType::Data => "Data",
        }
    }
}

/// Every (type, subtype) combination in the 802.11 frame-control table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FrameKind {
    AssociationRequest,
    AssociationResponse,
    ReassociationRequest,
    ReassociationResponse,
    ProbeRequest,
    ProbeResponse,
    Beacon,
    Atim,
    Disassociation,
    Authentication,
    Deauthentication,
    PsPoll,
    Rts,
    Cts,
    Ack,
    CfEnd,
    CfEndCfAck,
    Data,
    DataCfAck,
    DataCfPoll,
    DataCfAckCfPoll,
    NullFunction,
    CfAck,
    CfPoll,
    CfAckCfPoll,
}

use FrameKind as K;

/// (kind, type, subtype bits, description) in table order.
const TABLE: [(FrameKind, FrameType, u8, &str); 25] = [
    (K::AssociationRequest, FrameType::Management, 0b0000, "Association request"),
    (K::AssociationResponse, FrameType::Management, 0b0001, "Association response"),
    (K::ReassociationRequest, FrameType::Management, 0b0010, "Reassociation request"),
    (K::ReassociationResponse, FrameType::Management, 0b0011, "Reassociation response"),
    (K::ProbeRequest, FrameType::Management, 0b0100, "Probe request"),
    (K::ProbeResponse, FrameType::Management, 0b0101, "Probe response"),
    (K::Beacon, FrameType::Management, 0b1000, "Beacon"),
    (K::Atim, FrameType::Management, 0b1001, "Announcement traffic indication message (ATIM)"),
    // the source table spells this row "Dissociation"; kept verbatim
    (K::Disassociation, FrameType::Management, 0b1010, "Dissociation"),
    (K::Authentication, FrameType::Management, 0b1011, "Authentication"),
    (K::Deauthentication, FrameType::Management, 0b1100, "Deauthentication"),
    (K::PsPoll, FrameType::Control, 0b1010, "Power save \u{2013} poll"),
    (K::Rts, FrameType::Control, 0b1011, "Request to send"),
    (K::Cts, FrameType::Control, 0b1100, "Clear to send"),
    (K::Ack, FrameType::Control, 0b1101, "Acknowledgement"),
    (K::CfEnd, FrameType::Control, 0b1110, "Contention-free (CF)-end"),
    (K::CfEndCfAck, FrameType::Control, 0b1111, "CF-end + CF-ack"),
    (K::Data, FrameType::Data, 0b0000, "Data"),
    (K::DataCfAck, FrameType::Data, 0b0001, "Data + CF-Ack"),
    (K::DataCfPoll, FrameType::Data, 0b0010, "Data + CF- Poll"),
    (K::DataCfAckCfPoll, FrameType::Data, 0b0011, "Data + CF-Ack + CF-Poll"),
    (K::NullFunction, FrameType::Data, 0b0100, "Null function (no data)"),
    (K::CfAck, FrameType::Data, 0b0101, "CF-Ack (no data)"),
    (K::CfPoll, FrameType::Data, 0b0110, "CF-Poll (no data)"),
    (K::CfAckCfPoll, FrameType::Data, 0b0111, "CF-Ack + CF-Poll (no data)"),
];

impl FrameKind {
    fn row(self) -> &'static (FrameKind, FrameType, u8, &'static str) {
        TABLE
            .iter()
            .find(|r| r.0 == self)
            .expect("every kind has a table row")
    }

    pub fn frame_type(self) -> FrameType {
        self.row().1
    }

    pub fn description(self) -> &'static str {
        self.row().3
    }

    pub fn all() -> impl Iterator<Item = FrameKind> {
        TABLE.iter().map(|r| r.0)
    }
}

/// (type bits, subtype bits) for a frame kind.
pub fn encode_type_subtype(kind: FrameKind) -> (u8, u8) {
    let r = kind.row();
    (r.1.bits(), r.2)
}

pub fn decode_type_subtype(type_bits: u8, subtype_bits: u8) -> Result<FrameKind, MacError> {
    TABLE
        .iter()
        .find(|r| r.1.bits() == type_bits && r.2 == subtype_bits)
        .map(|r| r.0)
        .ok_or(MacError::UnknownFrameKind {
            type_bits,
            subtype_bits,
        })
}

/// Parses a binary digit string such as `"1011"` of the given width.
pub fn parse_bits(s: &str, width: usize) -> Result<u8, MacError> {
    let s = s.trim();
    if s.len() != width || !s.chars().all(|c| c == '0' || c == '1') {
        return Err(MacError::BadBits(s.to_string()));
    }
    u8::from_str_radix(s, 2).map_err(|_| MacError::BadBits(s.to_string()))
}

/// Table rows as `(type_bits, subtype_bits, type name, description)` strings.
pub fn frame_table() -> Vec<(String, String, &'static str, &'static str)> {
    TABLE
        .iter()
        .map(|(_, t, st, name)| (format!("{:02b}", t.bits()), format!("{st:04b}"), t.name(), *name))
        .collect()
}

/// The frame table as CSV with header `type_bits,subtype_bits,name`.
pub fn frame_table_csv() -> String {
    let mut out = String::from("type_bits,subtype_bits,name\n");
    for (t, st, _, name) in frame_table() {
        out.push_str(&format!("{t},{st},{name}\n"));
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MacFrameMeta {
    pub kind: FrameKind,
    pub body_octets: usize,
    pub retry: bool,
    pub duration_id: u16,
}

impl MacFrameMeta {
    pub fn new(kind: FrameKind, body_octets: usize) -> Self {
        MacFrameMeta {
            kind,
            body_octets,
            retry: false,
            duration_id: 0,
        }
    }
}

/// Header + body + FCS.
pub fn frame_octet_length(m: &MacFrameMeta) -> Result<usize, MacError> {
    if m.body_octets > MAX_BODY_OCTETS {
        return Err(MacError::BodyTooLarge(m.body_octets));
    }
    Ok(HEADER_OCTETS + m.body_octets + FCS_OCTETS)
}
