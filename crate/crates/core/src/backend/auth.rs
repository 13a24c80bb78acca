//! Per-component access keys.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};
use subtle::ConstantTimeEq;

use crate::config::SecretValue;

pub const ACCESS_KEY_HEADER: &str = "x-access-key";
pub const MIN_KEY_LEN: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    RedditCrawler,
    MarketCrawler,
    Admin,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::RedditCrawler, Role::MarketCrawler, Role::Admin];

    pub fn as_str(self) -> &'static str {
        match self {
            Role::RedditCrawler => "reddit_crawler",
            Role::MarketCrawler => "market_crawler",
            Role::Admin => "admin",
        }
    }

    /// Name of the secret file holding this role's key.
    pub fn secret_name(self) -> &'static str {
        match self {
            Role::RedditCrawler => "key_reddit_crawler",
            Role::MarketCrawler => "key_market_crawler",
            Role::Admin => "key_admin",
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Role::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| format!("unknown role {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum KeyError {
    #[error("access key for {0} is shorter than {MIN_KEY_LEN} bytes")]
    TooShort(Role),
    #[error("access keys for {0} and {1} are identical")]
    Duplicate(Role, Role),
}

/// An opaque credential bound to one role. Only its digest is kept.
#[derive(Clone)]
pub struct AccessKey {
    role: Role,
    digest: [u8; 32],
}

impl AccessKey {
    pub fn new(role: Role, key: &SecretValue) -> Result<Self, KeyError> {
        if key.expose().len() < MIN_KEY_LEN {
            return Err(KeyError::TooShort(role));
        }
        Ok(Self {
            role,
            digest: digest(key.expose()),
        })
    }

    pub fn role(&self) -> Role {
        self.role
    }
}

impl fmt::Debug for AccessKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("AccessKey")
            .field("role", &self.role)
            .finish_non_exhaustive()
    }
}

fn digest(key: &str) -> [u8; 32] {
    Sha256::digest(key.as_bytes()).into()
}

/// Every configured key, checked in constant time per request.
#[derive(Debug, Clone, Default)]
pub struct KeyRing {
    keys: BTreeMap<Role, AccessKey>,
}

impl KeyRing {
    pub fn new(keys: impl IntoIterator<Item = AccessKey>) -> Result<Self, KeyError> {
        let mut map: BTreeMap<Role, AccessKey> = BTreeMap::new();
        for key in keys {
            if let Some(other) = map.values().find(|k| bool::from(k.digest.ct_eq(&key.digest))) {
                return Err(KeyError::Duplicate(other.role, key.role));
            }
            map.insert(key.role, key);
        }
        Ok(Self { keys: map })
    }

    pub fn roles(&self) -> impl Iterator<Item = Role> + '_ {
        self.keys.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Maps a presented key to its role. Compares SHA-256 digests so the
    /// comparison time depends on neither the key length nor the match
    /// position, and always visits every configured key.
    pub fn authenticate(&self, presented: &str) -> Option<Role> {
        let candidate = digest(presented);
        let mut found = None;
        for key in self.keys.values() {
            if bool::from(key.digest.ct_eq(&candidate)) {
                found = Some(key.role);
            }
        }
        found
    }
}

/// Who is making a request, as determined by the `X-Access-Key` header.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Caller {
    Anonymous,
    Rejected,
    Authenticated(Role),
}

impl Caller {
    pub fn from_header(keys: &KeyRing, header: Option<&str>) -> Self {
        match header {
            None => Caller::Anonymous,
            Some(value) => keys
                .authenticate(value.trim())
                .map_or(Caller::Rejected, Caller::Authenticated),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, thiserror::Error)]
pub enum AuthError {
    #[error("a valid access key is required")]
    Unauthenticated,
    #[error("role {0} may not perform this operation")]
    Forbidden(Role),
}

/// Grants when the caller holds one of `allowed`.
pub fn authorize(caller: Caller, allowed: &[Role]) -> Result<Role, AuthError> {
    match caller {
        Caller::Anonymous | Caller::Rejected => Err(AuthError::Unauthenticated),
        Caller::Authenticated(role) if allowed.contains(&role) => Ok(role),
        Caller::Authenticated(role) => Err(AuthError::Forbidden(role)),
    }
}
