pub mod modarith;
pub mod numfield;
pub mod permcomb;
pub mod frobcount;
pub mod certify;
pub mod specfile;
