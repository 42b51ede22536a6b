//! Text and JSON encodings of grid sets, hypergraphs and container families.
//!
//! Grid set, text form:
//!
//! ```text
//! grid n=3 k=2
//! # comment lines start with '#'
//! 1 1
//! 2 1
//! ```
//!
//! Grid set, JSON form: `{"n": 3, "k": 2, "cells": [[1, 1], [2, 1]]}`.
//! Coordinates are 1-based. Readers accept either form.
//!
//! Hypergraph text form: a header line `r |V| |E|`, then one edge per line
//! as whitespace-separated 0-based vertex ids.

use corners_core::containers::{ContainerSet, Hypergraph};
use corners_core::{GridParams, GridSet, Point};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::CliError;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridSetJson {
    n: usize,
    k: usize,
    cells: Vec<Vec<usize>>,
}

pub fn parse_grid_set(input: &str) -> Result<GridSet, CliError> {
    if input.trim_start().starts_with('{') {
        let raw: GridSetJson = serde_json::from_str(input).map_err(|e| CliError::Parse(format!("grid set JSON: {e}")))?;
        let params = GridParams::new(raw.n, raw.k)?;
        let points: Vec<Point> = raw.cells.into_iter().map(Point::new).collect();
        return Ok(GridSet::from_points(params, &points)?);
    }
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| CliError::Parse("empty grid set file".into()))?;
    let params = parse_header(header)?;
    let mut points = Vec::new();
    for line in lines {
        let coords = line
            .split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| CliError::Parse(format!("bad coordinate {t:?} in line {line:?}"))))
            .collect::<Result<Vec<_>, _>>()?;
        points.push(Point::new(coords));
    }
    Ok(GridSet::from_points(params, &points)?)
}

fn parse_header(line: &str) -> Result<GridParams, CliError> {
    let bad = || CliError::Parse(format!("expected header \"grid n=<n> k=<k>\", got {line:?}"));
    let mut parts = line.split_whitespace();
    if parts.next() != Some("grid") {
        return Err(bad());
    }
    let (mut n, mut k) = (None, None);
    for p in parts {
        let (key, value) = p.split_once('=').ok_or_else(bad)?;
        let value: usize = value.parse().map_err(|_| bad())?;
        match key {
            "n" => n = Some(value),
            "k" => k = Some(value),
            _ => return Err(bad()),
        }
    }
    Ok(GridParams::new(n.ok_or_else(bad)?, k.ok_or_else(bad)?)?)
}

pub fn grid_set_text(a: &GridSet) -> String {
    let p = a.params();
    let mut out = format!("grid n={} k={}\n", p.n(), p.k());
    for pt in a.points() {
        let line: Vec<String> = pt.coords.iter().map(usize::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn grid_set_json(a: &GridSet) -> Value {
    let p = a.params();
    json!({
        "n": p.n(),
        "k": p.k(),
        "cells": a.points().into_iter().map(|pt| pt.coords).collect::<Vec<_>>(),
    })
}

pub fn hypergraph_text(h: &Hypergraph) -> String {
    let mut out = format!("{} {} {}\n", h.r(), h.vertex_count(), h.edge_count());
    for e in h.edges() {
        let line: Vec<String> = e.iter().map(u32::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_hypergraph(input: &str) -> Result<Hypergraph, CliError> {
    let mut lines = input.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let header = lines.next().ok_or_else(|| CliError::Parse("empty hypergraph file".into()))?;
    let nums = |line: &str| {
        line.split_whitespace()
            .map(|t| t.parse::<usize>().map_err(|_| CliError::Parse(format!("bad number {t:?} in line {line:?}"))))
            .collect::<Result<Vec<_>, _>>()
    };
    let head = nums(header)?;
    let [r, v, e] = head[..] else {
        return Err(CliError::Parse(format!("expected header \"r |V| |E|\", got {header:?}")));
    };
    let mut edges = Vec::with_capacity(e);
    for line in lines {
        edges.push(nums(line)?.into_iter().map(|x| x as u32).collect());
    }
    if edges.len() != e {
        return Err(CliError::Parse(format!("header announces {e} edges, file has {}", edges.len())));
    }
    Ok(Hypergraph::new(v, r, edges)?)
}

pub fn container_set_json(c: &ContainerSet) -> Value {
    json!({
        "vertex_count": c.vertex_count,
        "epsilon": c.epsilon,
        "containers": c.containers,
        "stats": {
            "count": c.len(),
            "max_size": c.max_size(),
            "edge_counts": c.edge_counts,
            "total_edges": c.total_edges,
            "power_sum": c.power_sum().to_string(),
        },
    })
}
