//! Group classification (to be implemented).
