//! GraphQL backend: authenticated ingest, tracked lists, and series reads.

pub mod auth;
mod http;
pub mod resolvers;
pub mod services;
pub mod tracked;

pub use auth::{authorize, AccessKey, AuthError, Caller, KeyRing, Role, ACCESS_KEY_HEADER};
pub use http::router;
pub use resolvers::{build_schema, schema_sdl, ApiSchema, ApiState};
pub use services::{
    select_services, ConstantSentiment, EngineSentiment, ModeError, ProductionSettings,
    RemoteSentiment, SentimentService, SentimentSource, ServiceMode, Services,
};
pub use tracked::{TrackError, TrackedSets};

use crate::sentiment::NeutralBand;

/// Builds the schema over `services`. Tracked lists persist in the state
/// directory when one is set.
pub fn schema_for(services: &Services) -> Result<ApiSchema, TrackError> {
    let tracked = match &services.state_dir {
        Some(dir) => TrackedSets::persistent(dir)?,
        None => TrackedSets::in_memory(),
    };
    Ok(build_schema(ApiState {
        store: services.store.clone(),
        sentiment: services.sentiment.clone(),
        tracked,
        band: NeutralBand::default(),
    }))
}
