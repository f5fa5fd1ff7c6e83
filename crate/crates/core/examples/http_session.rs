//! Drive the JSON API in-process: start a session, apply a rule, trip the
//! revision check and fetch the proof file.

use axum::body::Body;
use axum::http::{Method, Request};
use http_body_util::BodyExt;
use serde_json::{json, Value};
use sequent_trainer::service::http::{router, AppState};
use tower::ServiceExt;

async fn call(app: &axum::Router, method: Method, uri: &str, body: Value) -> (u16, Value) {
    let req = Request::builder().method(method).uri(uri).body(Body::from(body.to_string())).unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status().as_u16();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes();
    (status, serde_json::from_slice(&bytes).unwrap_or(Value::Null))
}

#[tokio::main]
async fn main() {
    let app = router(AppState::new(None, "en").unwrap());
    let (status, v) = call(&app, Method::POST, "/sessions", json!({ "sequent": "P & Q ==> Q & P" })).await;
    let id = v["sessionId"].as_str().unwrap().to_string();
    println!("POST /sessions -> {status}, rules on the left: {}", v["state"]["nodes"][0]["antecedent"][0]["applicableRules"]);

    let step = json!({ "nodeId": 0, "rule": "AndR", "selection": { "side": "R", "index": 0 }, "expectedRevision": 0 });
    let (status, v) = call(&app, Method::POST, &format!("/sessions/{id}/apply"), step.clone()).await;
    println!("apply AndR -> {status}, open goals {}", v["openGoals"]);

    let (status, v) = call(&app, Method::POST, &format!("/sessions/{id}/apply"), step).await;
    println!("stale revision -> {status}: {}", v["localizedMessage"]);

    let bad = json!({ "nodeId": 1, "rule": "OrL", "selection": { "side": "L", "index": 0 }, "expectedRevision": 1 });
    let (status, v) = call(&app, Method::POST, &format!("/sessions/{id}/apply?locale=de"), bad).await;
    println!("OrL on a conjunction -> {status}: {}", v["localizedMessage"]);

    let (_, file) = call(&app, Method::GET, &format!("/sessions/{id}/file"), Value::Null).await;
    println!("\n{}", serde_json::to_string_pretty(&file).unwrap());
}
