//! Holds the `acceptance` test target, which checks the workspace end to end.
