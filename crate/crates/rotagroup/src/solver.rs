//! Solvability and constructive solving (to be implemented).
