//! Transcribed figure arrays shipped with the crate.

pub const FIG1: &str = include_str!("../../../../fixtures/fig1.json");
pub const FIG2: &str = include_str!("../../../../fixtures/fig2_rbibd_15.json");
pub const FIG3: &str = include_str!("../../../../fixtures/fig3_gbtd_3_9.json");
pub const FIG3_MUTATED: &str = include_str!("../../../../fixtures/fig3_mutated.json");
pub const FIG7: &str = include_str!("../../../../fixtures/fig7_igbtp_29.json");
pub const FIG7_PRINTED: &str = include_str!("../../../../fixtures/fig7_igbtp_29_printed.json");
pub const FIG8: &str = include_str!("../../../../fixtures/fig8_frgbtd_6_6.json");

pub const ALL: &[(&str, &str)] = &[
    ("fig1", FIG1),
    ("fig2", FIG2),
    ("fig3", FIG3),
    ("fig3_mutated", FIG3_MUTATED),
    ("fig7", FIG7),
    ("fig7_printed", FIG7_PRINTED),
    ("fig8", FIG8),
];

pub fn load(text: &str) -> super::DesignGrid {
    super::from_json(text).expect("fixture parses")
}
