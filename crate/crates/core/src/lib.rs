pub mod algebra;
pub mod atemporal;
pub mod error;
pub mod lang;
pub mod network;
pub mod temporal;
