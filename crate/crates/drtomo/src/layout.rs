//! JSON sidecar describing where the components of a board sit.

use drtomo_core::hardness::BoardSpec;
use drtomo_core::Point;
use serde_json::{json, Value};

fn point(p: &Point) -> Value {
    json!([p.0, p.1])
}

pub fn layout_json(board: &BoardSpec) -> Value {
    let components: Vec<Value> = board
        .components
        .iter()
        .map(|c| {
            json!({
                "kind": c.kind,
                "index": c.index,
                "x": c.rect.origin.0,
                "y": c.rect.origin.1,
                "width": c.rect.width,
                "height": c.rect.height,
            })
        })
        .collect();
    let nested = |v: &Vec<Vec<Point>>| -> Value {
        v.iter()
            .map(|row| row.iter().map(point).collect::<Vec<_>>())
            .collect()
    };
    json!({
        "size": board.size,
        "clauses": board.clauses,
        "vars": board.vars,
        "anchors": board.anchors,
        "unreliable_blocks": board.unreliable_count(),
        "initializer_chips": board.initializer_chips.iter().map(point).collect::<Vec<_>>(),
        "connector_chips": nested(&board.connector_chips),
        "vertical_collector_chips": nested(&board.vertical_collector_chips),
        "horizontal_collector_chips": nested(&board.horizontal_collector_chips),
        "configurations": board
            .configurations
            .iter()
            .map(|clause| clause.iter().map(|cells| cells.iter().map(point).collect::<Vec<_>>()).collect::<Vec<_>>())
            .collect::<Vec<_>>(),
        "unnegated": board.unnegated,
        "negated": board.negated,
        "components": components,
    })
}

/// Pretty-printed sidecar text, newline terminated.
pub fn write_layout(board: &BoardSpec) -> String {
    let mut s = serde_json::to_string_pretty(&layout_json(board)).expect("json values serialize");
    s.push('\n');
    s
}
