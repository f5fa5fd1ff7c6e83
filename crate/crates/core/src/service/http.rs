//! JSON API for the trainer front end.
//!
//! | method | path | |
//! |---|---|---|
//! | POST | `/sessions` | `{sequent, locale?, strict?}` → 201 `{sessionId, state}` |
//! | GET | `/sessions/{id}` | session state |
//! | POST | `/sessions/{id}/apply` | `{nodeId, rule, selection, expectedRevision}` |
//! | POST | `/sessions/{id}/reset-node` | `{nodeId, expectedRevision}` |
//! | GET, PUT | `/sessions/{id}/file` | proof file |
//! | GET | `/sessions/{id}/verify` | verification report |
//! | GET | `/sessions/{id}/export?format=text\|svg` | rendered proof |
//! | POST | `/verify` | verify a proof file sent as the body |
//! | GET | `/rules`, `/rules/{id}` | rule schemas and explanations |
//!
//! Every endpoint takes an optional `locale` query parameter. Errors are
//! `{code, messageKey, localizedMessage, diagnostic?, field?, offset?}`.

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::body::Bytes;
use axum::extract::{Path, Query, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::store::{Session, SessionStore};
use super::view::{report_view, rule_view, session_state, SessionState};
use crate::engine::{Diagnostic, EngineOptions, RuleId, Selection};
use crate::feedback::Catalogs;
use crate::proof::{export_svg, export_text, save, verify, NodeId, ProofError, ProofFile, ProofTree};
use crate::sequent::parse_sequent;

pub struct AppState {
    pub store: SessionStore,
    pub catalogs: &'static Catalogs,
    pub default_locale: String,
}

pub type Shared = Arc<AppState>;

#[derive(Clone, Debug)]
pub struct ServerConfig {
    pub addr: SocketAddr,
    pub data_dir: Option<PathBuf>,
    pub locale: String,
    pub catalogs: &'static Catalogs,
}

impl AppState {
    /// State with the compiled-in catalogs.
    pub fn new(data_dir: Option<PathBuf>, locale: &str) -> std::io::Result<Shared> {
        Self::with_catalogs(data_dir, locale, Catalogs::shipped())
    }

    pub fn with_catalogs(data_dir: Option<PathBuf>, locale: &str, catalogs: &'static Catalogs) -> std::io::Result<Shared> {
        if !catalogs.has_locale(locale) {
            log::warn!("no catalog for locale `{locale}`; messages fall back to the reference locale");
        }
        Ok(Arc::new(AppState { store: SessionStore::open(data_dir, locale)?, catalogs, default_locale: locale.to_string() }))
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ErrorBody {
    pub code: String,
    pub message_key: String,
    pub localized_message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub diagnostic: Option<Diagnostic>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub offset: Option<usize>,
}

#[derive(Debug)]
pub struct ApiError {
    status: StatusCode,
    body: ErrorBody,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.status, Json(self.body)).into_response()
    }
}

type ApiResult<T> = Result<T, ApiError>;

/// Locale and catalogs for one request.
struct Ctx<'a> {
    catalogs: &'a Catalogs,
    locale: String,
}

impl Ctx<'_> {
    fn error(&self, status: StatusCode, code: &str, args: &[(&str, &str)]) -> ApiError {
        let key = format!("error.{code}");
        let localized_message = self.catalogs.render(&key, &self.locale, args);
        ApiError {
            status,
            body: ErrorBody {
                code: code.into(),
                message_key: key,
                localized_message,
                diagnostic: None,
                field: None,
                offset: None,
            },
        }
    }

    fn invalid(&self, reason: &str) -> ApiError {
        self.error(StatusCode::BAD_REQUEST, "invalid_request", &[("reason", reason)])
    }

    fn rejected(&self, d: Diagnostic) -> ApiError {
        ApiError {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            body: ErrorBody {
                code: "rule_rejected".into(),
                message_key: format!("detail.{}", d.detail),
                localized_message: self.catalogs.message_for(&d, &self.locale),
                diagnostic: Some(d),
                field: None,
                offset: None,
            },
        }
    }

    fn internal(&self, e: impl std::fmt::Display) -> ApiError {
        log::error!("{e}");
        self.error(StatusCode::INTERNAL_SERVER_ERROR, "internal", &[("reason", &e.to_string())])
    }

    fn proof_error(&self, e: ProofError) -> ApiError {
        match e {
            ProofError::UnknownNode(id) => self.error(StatusCode::NOT_FOUND, "node_not_found", &[("id", &id.to_string())]),
            ProofError::Rejected(d) => self.rejected(*d),
        }
    }

    /// Deserializes a JSON body, naming the offending field on failure.
    fn body<T: DeserializeOwned>(&self, bytes: &[u8]) -> ApiResult<T> {
        let de = &mut serde_json::Deserializer::from_slice(bytes);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let field = e.path().to_string();
            let mut err = self.invalid(&e.inner().to_string());
            err.body.field = Some(if field == "." { "$".into() } else { field });
            err
        })
    }

    fn proof_file(&self, bytes: &[u8]) -> ApiResult<ProofFile> {
        ProofFile::parse(bytes).map_err(|e| {
            let mut err = self.error(StatusCode::UNPROCESSABLE_ENTITY, "invalid_proof_file", &[("reason", &e.message)]);
            err.body.field = Some(e.path);
            err
        })
    }
}

#[derive(Debug, Default, Deserialize)]
pub struct LocaleQuery {
    pub locale: Option<String>,
}

#[derive(Debug, Default, Deserialize)]
pub struct ExportQuery {
    pub locale: Option<String>,
    pub format: Option<String>,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CreateRequest {
    pub sequent: String,
    #[serde(default)]
    pub locale: Option<String>,
    #[serde(default)]
    pub strict: bool,
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CreateResponse {
    pub session_id: String,
    pub state: SessionState,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ApplyRequest {
    pub node_id: NodeId,
    pub rule: String,
    pub selection: Selection,
    pub expected_revision: u64,
}

#[derive(Debug, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ResetRequest {
    pub node_id: NodeId,
    pub expected_revision: u64,
}

impl AppState {
    fn ctx(&self, query: Option<&str>, session: Option<&str>) -> Ctx<'_> {
        let locale = query.or(session).unwrap_or(&self.default_locale).to_string();
        Ctx { catalogs: self.catalogs, locale }
    }

    /// Runs `f` with the session locked.
    fn with_session<T>(
        &self,
        id: &str,
        query_locale: Option<&str>,
        f: impl FnOnce(&Ctx<'_>, &mut Session) -> ApiResult<T>,
    ) -> ApiResult<T> {
        let Some(s) = self.store.get(id) else {
            let ctx = self.ctx(query_locale, None);
            return Err(ctx.error(StatusCode::NOT_FOUND, "session_not_found", &[("id", id)]));
        };
        let mut s = s.lock().map_err(|e| self.ctx(query_locale, None).internal(e))?;
        let ctx = self.ctx(query_locale, Some(&s.locale));
        f(&ctx, &mut s)
    }

    fn mutate(&self, ctx: &Ctx<'_>, s: &mut Session, tree: ProofTree) -> ApiResult<SessionState> {
        self.store.commit(s, tree).map_err(|e| ctx.internal(e))?;
        Ok(session_state(s))
    }
}

fn check_revision(ctx: &Ctx<'_>, s: &Session, expected: u64) -> ApiResult<()> {
    if expected == s.revision {
        return Ok(());
    }
    Err(ctx.error(
        StatusCode::CONFLICT,
        "revision_conflict",
        &[("expected", &expected.to_string()), ("actual", &s.revision.to_string())],
    ))
}

async fn create_session(State(app): State<Shared>, Query(q): Query<LocaleQuery>, body: Bytes) -> ApiResult<Response> {
    let ctx = app.ctx(q.locale.as_deref(), None);
    let req: CreateRequest = ctx.body(&body)?;
    let ctx = app.ctx(req.locale.as_deref().or(q.locale.as_deref()), None);
    let sequent = parse_sequent(&req.sequent).map_err(|e| {
        let mut err = ctx.error(StatusCode::BAD_REQUEST, "parse_error", &[("reason", &e.to_string())]);
        err.body.field = Some("sequent".into());
        err.body.offset = Some(e.offset);
        err
    })?;
    let tree = ProofTree::with_options(sequent, EngineOptions { strict_substitution: req.strict });
    let s = app.store.create(tree, &ctx.locale).map_err(|e| ctx.internal(e))?;
    let s = s.lock().map_err(|e| ctx.internal(e))?;
    let body = CreateResponse { session_id: s.id.clone(), state: session_state(&s) };
    log::info!("created session {}", s.id);
    Ok((StatusCode::CREATED, Json(body)).into_response())
}

async fn get_session(
    State(app): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<LocaleQuery>,
) -> ApiResult<Json<SessionState>> {
    app.with_session(&id, q.locale.as_deref(), |_, s| Ok(Json(session_state(s))))
}

async fn apply(
    State(app): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<LocaleQuery>,
    body: Bytes,
) -> ApiResult<Json<SessionState>> {
    app.with_session(&id, q.locale.as_deref(), |ctx, s| {
        let req: ApplyRequest = ctx.body(&body)?;
        let rule: RuleId = req
            .rule
            .parse()
            .map_err(|e: String| ctx.error(StatusCode::BAD_REQUEST, "unknown_rule", &[("reason", &e)]))?;
        check_revision(ctx, s, req.expected_revision)?;
        let tree = s.tree.apply_at(req.node_id, rule, req.selection).map_err(|e| ctx.proof_error(e))?;
        app.mutate(ctx, s, tree).map(Json)
    })
}

async fn reset_node(
    State(app): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<LocaleQuery>,
    body: Bytes,
) -> ApiResult<Json<SessionState>> {
    app.with_session(&id, q.locale.as_deref(), |ctx, s| {
        let req: ResetRequest = ctx.body(&body)?;
        check_revision(ctx, s, req.expected_revision)?;
        let tree = s.tree.reset_node(req.node_id).map_err(|e| ctx.proof_error(e))?;
        app.mutate(ctx, s, tree).map(Json)
    })
}

fn json_bytes(bytes: Vec<u8>) -> Response {
    ([(header::CONTENT_TYPE, "application/json")], bytes).into_response()
}

async fn get_file(State(app): State<Shared>, Path(id): Path<String>, Query(q): Query<LocaleQuery>) -> ApiResult<Response> {
    app.with_session(&id, q.locale.as_deref(), |_, s| Ok(json_bytes(save(&s.tree))))
}

async fn put_file(
    State(app): State<Shared>,
    Path(id): Path<String>,
    Query(q): Query<LocaleQuery>,
    body: Bytes,
) -> ApiResult<Json<SessionState>> {
    app.with_session(&id, q.locale.as_deref(), |ctx, s| {
        let file = ctx.proof_file(&body)?;
        app.mutate(ctx, s, file.into_tree()).map(Json)
    })
}

async fn verify_session(State(app): State<Shared>, Path(id): Path<String>, Query(q): Query<LocaleQuery>) -> ApiResult<Response> {
    app.with_session(&id, q.locale.as_deref(), |ctx, s| {
        Ok(Json(report_view(verify(&s.tree), ctx.catalogs, &ctx.locale)).into_response())
    })
}

async fn verify_file(State(app): State<Shared>, Query(q): Query<LocaleQuery>, body: Bytes) -> ApiResult<Response> {
    let ctx = app.ctx(q.locale.as_deref(), None);
    let file = ctx.proof_file(&body)?;
    Ok(Json(report_view(verify(&file.into_tree()), ctx.catalogs, &ctx.locale)).into_response())
}

async fn export(State(app): State<Shared>, Path(id): Path<String>, Query(q): Query<ExportQuery>) -> ApiResult<Response> {
    app.with_session(&id, q.locale.as_deref(), |ctx, s| match q.format.as_deref().unwrap_or("text") {
        "text" => Ok(([(header::CONTENT_TYPE, "text/plain; charset=utf-8")], export_text(&s.tree)).into_response()),
        "svg" => Ok(([(header::CONTENT_TYPE, "image/svg+xml")], export_svg(&s.tree)).into_response()),
        other => Err(ctx.invalid(&format!("unknown export format `{other}`"))),
    })
}

async fn list_rules(State(app): State<Shared>, Query(q): Query<LocaleQuery>) -> Response {
    let ctx = app.ctx(q.locale.as_deref(), None);
    let rules: Vec<_> = RuleId::ALL.iter().map(|r| rule_view(*r, ctx.catalogs, &ctx.locale)).collect();
    Json(rules).into_response()
}

async fn get_rule(State(app): State<Shared>, Path(id): Path<String>, Query(q): Query<LocaleQuery>) -> ApiResult<Response> {
    let ctx = app.ctx(q.locale.as_deref(), None);
    let rule: RuleId = id
        .parse()
        .map_err(|e: String| ctx.error(StatusCode::NOT_FOUND, "unknown_rule", &[("reason", &e)]))?;
    Ok(Json(rule_view(rule, ctx.catalogs, &ctx.locale)).into_response())
}

pub fn router(state: Shared) -> Router {
    Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}", get(get_session))
        .route("/sessions/{id}/apply", post(apply))
        .route("/sessions/{id}/reset-node", post(reset_node))
        .route("/sessions/{id}/file", get(get_file).put(put_file))
        .route("/sessions/{id}/verify", get(verify_session))
        .route("/sessions/{id}/export", get(export))
        .route("/verify", post(verify_file))
        .route("/rules", get(list_rules))
        .route("/rules/{id}", get(get_rule))
        .with_state(state)
}

pub async fn serve(config: ServerConfig) -> std::io::Result<()> {
    let state = AppState::with_catalogs(config.data_dir, &config.locale, config.catalogs)?;
    let listener = tokio::net::TcpListener::bind(config.addr).await?;
    log::info!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(state)).await
}
