//! The built-in catalog as the CLI sees it: named entries with a construction
//! recipe, the realized group, and the flags the suites filter on.

use serde::Serialize;
use towerlab_core::catalog;
use towerlab_core::group::{is_centerless, Group};
use towerlab_core::error::{Error, Result};

/// Hard ceiling on `build_catalog`; requests above it are rejected rather
/// than silently clamped.
pub const CATALOG_MAX_ORDER: usize = 200;

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub recipe: String,
    pub order: usize,
    pub centerless: bool,
    #[serde(skip)]
    pub group: Group,
}

/// Human-readable construction recipe for a catalog name.
pub fn recipe_for(name: &str) -> String {
    if let Some(n) = name.strip_prefix("AffZ") {
        return format!("affine({n})");
    }
    match name {
        "C2xC2" => "direct(C2,C2)".to_string(),
        "S3xC2" => "direct(S3,C2)".to_string(),
        "S3xS3" => "direct(S3,S3)".to_string(),
        "S3wrC2" => "wreath(S3,C2)".to_string(),
        _ => {
            let (family, n) = name.split_at(1);
            let family = match family {
                "C" => "cyclic",
                "D" => "dihedral",
                "S" => "symmetric",
                "A" => "alternating",
                _ => "table",
            };
            format!("{family}({n})")
        }
    }
}

/// Realize every catalog entry of order at most `max_order`, in catalog
/// order. Rebuilding is deterministic: the same request yields byte-identical
/// tables.
pub fn build_catalog(max_order: usize) -> Result<Vec<CatalogEntry>> {
    if max_order > CATALOG_MAX_ORDER {
        return Err(Error::CapExceeded {
            limit: CATALOG_MAX_ORDER,
            detail: format!("catalog build up to order {max_order}"),
        });
    }
    let mut out = Vec::new();
    for name in catalog::names() {
        let group = catalog::build(name)?;
        if group.order() > max_order {
            continue;
        }
        out.push(CatalogEntry {
            name: name.to_string(),
            recipe: recipe_for(name),
            order: group.order(),
            centerless: is_centerless(&group),
            group,
        });
    }
    Ok(out)
}
