use std::path::Path;

use anyhow::{Context, Result};
use symcoh::io::{from_json, GroupRef, ModuleRef};
use symcoh::{FiniteGroup, GModule};

/// Contents of `arg` when it names an existing file.
pub fn file_text(arg: &str) -> Result<Option<String>> {
    if Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
        Ok(Some(text))
    } else {
        Ok(None)
    }
}

pub fn read_json<T: for<'de> serde::Deserialize<'de>>(path: &str) -> Result<T> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    from_json(&text).with_context(|| format!("parsing {path}"))
}

pub fn group_ref(arg: &str) -> Result<GroupRef> {
    Ok(match file_text(arg)? {
        Some(text) => from_json(&text).with_context(|| format!("parsing {arg}"))?,
        None => GroupRef::Spec(arg.to_string()),
    })
}

pub fn module_ref(arg: &str) -> Result<ModuleRef> {
    Ok(match file_text(arg)? {
        Some(text) => from_json(&text).with_context(|| format!("parsing {arg}"))?,
        None => ModuleRef::Spec(arg.to_string()),
    })
}

pub fn group(arg: &str) -> Result<FiniteGroup> {
    group_ref(arg)?.build().with_context(|| format!("group {arg}"))
}

pub fn module(group: &str, module: &str) -> Result<GModule> {
    module_ref(module)?.build(&group_ref(group)?).with_context(|| format!("module {module} over {group}"))
}
