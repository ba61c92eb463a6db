#![allow(dead_code)]

pub mod corpora;
pub mod golden;
pub mod oracle;
pub mod scenario;
