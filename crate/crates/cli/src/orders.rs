//! Order-specification strings. Constraints are on cdf values: `A<=B`
//! says the cdf of group A lies below the cdf of group B everywhere, that
//! is, A is hypothesized stochastically larger.

use elso::OrderSpec;

use crate::errors::{CliError, CliResult};

/// Parses `simple`, `tree:root=<g>`, `umbrella:peak=<g>` or
/// `general:<g><=<g>,...` where `<g>` is resolved to a 0-based component
/// index by `resolve`.
pub fn parse_order(
    spec: &str,
    k: usize,
    resolve: &dyn Fn(&str) -> CliResult<usize>,
) -> CliResult<OrderSpec> {
    let spec = spec.trim();
    if spec == "simple" {
        return Ok(OrderSpec::simple(k)?);
    }
    if let Some(rest) = spec.strip_prefix("tree:") {
        let root = rest
            .strip_prefix("root=")
            .ok_or_else(|| CliError::Args(format!("expected tree:root=<group>, got '{spec}'")))?;
        return Ok(OrderSpec::tree(k, resolve(root.trim())?)?);
    }
    if let Some(rest) = spec.strip_prefix("umbrella:") {
        let peak = rest.strip_prefix("peak=").ok_or_else(|| {
            CliError::Args(format!("expected umbrella:peak=<group>, got '{spec}'"))
        })?;
        return Ok(OrderSpec::umbrella(k, resolve(peak.trim())?)?);
    }
    if let Some(rest) = spec.strip_prefix("general:") {
        let mut pairs = Vec::new();
        for part in rest.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (lo, hi) = part.split_once("<=").ok_or_else(|| {
                CliError::Args(format!(
                    "expected '<g><=<g>' in general order, got '{part}'"
                ))
            })?;
            pairs.push((resolve(lo.trim())?, resolve(hi.trim())?));
        }
        if pairs.is_empty() {
            return Err(CliError::Args(
                "general order needs at least one constraint".into(),
            ));
        }
        return Ok(OrderSpec::general(k, pairs)?);
    }
    Err(CliError::Args(format!(
        "unknown order '{spec}' (expected simple, tree:root=.., umbrella:peak=.. or general:..)"
    )))
}

/// Resolver for group-label orders.
pub fn resolve_by_label<'a>(labels: &'a [String]) -> impl Fn(&str) -> CliResult<usize> + 'a {
    move |name: &str| {
        labels
            .iter()
            .position(|l| l == name)
            .ok_or_else(|| CliError::Args(format!("order references unknown group '{name}'")))
    }
}

/// Resolver for 1-based positional orders (scenario configs).
pub fn resolve_by_position(k: usize) -> impl Fn(&str) -> CliResult<usize> {
    move |name: &str| {
        let pos: usize = name.parse().map_err(|_| {
            CliError::Args(format!("expected a 1-based group position, got '{name}'"))
        })?;
        if pos == 0 || pos > k {
            return Err(CliError::Args(format!(
                "group position {pos} out of range 1..={k}"
            )));
        }
        Ok(pos - 1)
    }
}

/// Canonical display form, with components shown via `display`.
pub fn order_display(order: &OrderSpec, display: &dyn Fn(usize) -> String) -> String {
    match order.kind() {
        elso::OrderKind::Simple => "simple".to_string(),
        elso::OrderKind::Tree { root } => format!("tree:root={}", display(root)),
        elso::OrderKind::Umbrella { peak } => format!("umbrella:peak={}", display(peak)),
        elso::OrderKind::General => {
            let pairs: Vec<String> = order
                .constraint_pairs()
                .iter()
                .map(|&(i, j)| format!("{}<={}", display(i), display(j)))
                .collect();
            format!("general:{}", pairs.join(","))
        }
    }
}
