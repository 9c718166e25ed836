//! Run configuration, caching, verification, and the command layer.
