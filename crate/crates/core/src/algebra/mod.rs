pub mod fock;
pub mod modes;
pub mod toy;
pub mod virasoro;
