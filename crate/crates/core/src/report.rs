//! JSON report structures (placeholder during bring-up).
