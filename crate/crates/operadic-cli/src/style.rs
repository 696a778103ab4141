//! Minimal ANSI styling, honoring the NO_COLOR convention.

use std::ffi::OsStr;

/// Color is enabled only for terminal stdout and an unset NO_COLOR.
pub fn color_allowed_by_env() -> bool {
    color_allowed(std::env::var_os("NO_COLOR").as_deref())
}

// Per the no-color convention, any non-empty value disables styling.
fn color_allowed(no_color: Option<&OsStr>) -> bool {
    no_color.is_none_or(|v| v.is_empty())
}

pub fn paint(text: &str, code: &str, enabled: bool) -> String {
    if enabled {
        format!("\x1b[{code}m{text}\x1b[0m")
    } else {
        text.to_string()
    }
}

pub const GREEN: &str = "32";
pub const RED: &str = "31";
