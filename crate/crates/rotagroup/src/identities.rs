//! Closed-form identity oracles (to be implemented).
