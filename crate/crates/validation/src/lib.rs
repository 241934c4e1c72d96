//! Holds the `acceptance` test target; the library itself is empty.
