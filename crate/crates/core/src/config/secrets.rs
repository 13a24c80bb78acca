use std::fmt;
use std::path::{Path, PathBuf};

use crate::backend::auth::{AccessKey, KeyError, KeyRing, Role};

pub const DEFAULT_SECRETS_DIR: &str = "./secrets";

/// A secret string. `Debug` and `Display` never reveal the value.
#[derive(Clone, PartialEq, Eq)]
pub struct SecretValue(String);

impl SecretValue {
    pub fn expose(&self) -> &str {
        &self.0
    }
}

impl From<&str> for SecretValue {
    fn from(value: &str) -> Self {
        Self(value.to_owned())
    }
}

impl From<String> for SecretValue {
    fn from(value: String) -> Self {
        Self(value)
    }
}

impl fmt::Debug for SecretValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("SecretValue([redacted])")
    }
}

impl fmt::Display for SecretValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[redacted]")
    }
}

/// A secret loaded from `<directory>/<name>`.
#[derive(Debug, Clone)]
pub struct SecretRef {
    pub name: String,
    pub mount_path: PathBuf,
    pub value: SecretValue,
}

/// Failures name the secret, never its content.
#[derive(Debug, thiserror::Error)]
pub enum SecretError {
    #[error("secret {name:?} could not be read: {kind}")]
    Unreadable {
        name: String,
        kind: std::io::ErrorKind,
    },
    #[error("secret {name:?} is empty")]
    Empty { name: String },
    #[error("secret name {0:?} is not a plain file name")]
    BadName(String),
    #[error("secret {name:?} is not valid UTF-8")]
    NotUtf8 { name: String },
    #[error(transparent)]
    Key(#[from] KeyError),
}

pub fn load_secret(name: &str, directory: impl AsRef<Path>) -> Result<SecretRef, SecretError> {
    let plain = !name.is_empty()
        && name != "."
        && name != ".."
        && !name.contains(['/', '\\'])
        && !name.contains('\0');
    if !plain {
        return Err(SecretError::BadName(name.to_owned()));
    }
    let mount_path = directory.as_ref().join(name);
    let bytes = std::fs::read(&mount_path).map_err(|err| SecretError::Unreadable {
        name: name.to_owned(),
        kind: err.kind(),
    })?;
    let text = String::from_utf8(bytes).map_err(|_| SecretError::NotUtf8 {
        name: name.to_owned(),
    })?;
    let value = text.trim_end_matches(['\n', '\r']);
    if value.trim().is_empty() {
        return Err(SecretError::Empty {
            name: name.to_owned(),
        });
    }
    tracing::debug!(secret = name, "secret loaded");
    Ok(SecretRef {
        name: name.to_owned(),
        mount_path,
        value: SecretValue(value.to_owned()),
    })
}

/// Loads the key of one role, e.g. a crawler loading only its own key.
pub fn load_access_key(role: Role, directory: impl AsRef<Path>) -> Result<SecretValue, SecretError> {
    let secret = load_secret(role.secret_name(), directory)?;
    AccessKey::new(role, &secret.value)?;
    Ok(secret.value)
}

/// Loads `key_reddit_crawler`, `key_market_crawler` and `key_admin`.
pub fn load_access_keys(directory: impl AsRef<Path>) -> Result<KeyRing, SecretError> {
    let directory = directory.as_ref();
    let mut keys = Vec::with_capacity(Role::ALL.len());
    for role in Role::ALL {
        let secret = load_secret(role.secret_name(), directory)?;
        keys.push(AccessKey::new(role, &secret.value)?);
    }
    Ok(KeyRing::new(keys)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    #[test]
    fn trims_trailing_newline() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("token"), "abc123\n").unwrap();
        let secret = load_secret("token", dir.path()).unwrap();
        assert_eq!(secret.value.expose(), "abc123");
        assert_eq!(secret.mount_path, dir.path().join("token"));
        fs::write(dir.path().join("crlf"), "abc123\r\n").unwrap();
        assert_eq!(load_secret("crlf", dir.path()).unwrap().value.expose(), "abc123");
    }

    #[test]
    fn missing_secret_names_it() {
        let dir = tempfile::tempdir().unwrap();
        let err = load_secret("reddit_client_secret", dir.path()).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("reddit_client_secret"), "{msg}");
        assert!(!msg.contains(&dir.path().display().to_string()));
    }

    #[test]
    fn empty_secret_is_error() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("blank"), "\n").unwrap();
        assert!(matches!(
            load_secret("blank", dir.path()),
            Err(SecretError::Empty { .. })
        ));
    }

    #[test]
    fn rejects_path_names() {
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            load_secret("../etc/passwd", dir.path()),
            Err(SecretError::BadName(_))
        ));
    }

    #[test]
    fn redacted_formatting() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("s"), "hunter2-hunter2").unwrap();
        let secret = load_secret("s", dir.path()).unwrap();
        assert!(!format!("{secret:?}").contains("hunter2"));
        assert!(!format!("{}", secret.value).contains("hunter2"));
    }

    fn write_keys(dir: &Path, values: [&str; 3]) {
        for (role, value) in Role::ALL.into_iter().zip(values) {
            fs::write(dir.join(role.secret_name()), format!("{value}\n")).unwrap();
        }
    }

    #[test]
    fn loads_three_roles() {
        let dir = tempfile::tempdir().unwrap();
        write_keys(dir.path(), ["reddit-0123456789abcdef", "market-0123456789abcdef", "admin-0123456789abcdef"]);
        let ring = load_access_keys(dir.path()).unwrap();
        assert_eq!(ring.len(), 3);
        assert_eq!(ring.authenticate("admin-0123456789abcdef"), Some(Role::Admin));
    }

    #[test]
    fn duplicate_values_fail() {
        let dir = tempfile::tempdir().unwrap();
        write_keys(dir.path(), ["same-0123456789abcdef", "same-0123456789abcdef", "admin-0123456789abcdef"]);
        let err = load_access_keys(dir.path()).unwrap_err();
        assert!(matches!(err, SecretError::Key(KeyError::Duplicate(..))));
        assert!(!err.to_string().contains("same-0123"));
    }

    #[test]
    fn missing_admin_fails() {
        let dir = tempfile::tempdir().unwrap();
        write_keys(dir.path(), ["reddit-0123456789abcdef", "market-0123456789abcdef", "admin-0123456789abcdef"]);
        fs::remove_file(dir.path().join("key_admin")).unwrap();
        let err = load_access_keys(dir.path()).unwrap_err();
        assert!(err.to_string().contains("key_admin"));
    }
}
