//! Explicit bijections on `S_n`: Foata's first transformation and the
//! insertion-built map `Θ_n`.

mod foata;
mod theta;

pub use foata::{foata, foata_inverse, foata_trace, FoataTrace};
pub use theta::{
    build_theta, insert_i, insert_max, label_adjacency_slots, label_adjacency_slots_in, label_value_slots,
    label_value_slots_in, matches_transitions, BijectionTable, Effect, Slot, SlotLabeling,
};
