//! Frame type/subtype table with an encode/decode round trip.

use wlan_mac_lab::mac::{decode_type_subtype, encode_type_subtype, frame_octet_length, frame_table_csv, FrameKind, MacFrameMeta};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    print!("{}", frame_table_csv());
    for k in FrameKind::all() {
        let (t, st) = encode_type_subtype(k);
        assert_eq!(decode_type_subtype(t, st)?, k);
    }
    let data = MacFrameMeta::new(FrameKind::Data, 1500);
    println!("\n1500-octet data frame: {} octets on air", frame_octet_length(&data)?);
    Ok(())
}
