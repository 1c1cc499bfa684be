use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use cmheight::characters::{UnitGroup, UnitGroupTable};
use cmheight::Result;

/// Unit groups, read from and written to `dir` when one is configured.
pub struct GroupCache {
    dir: Option<PathBuf>,
}

impl GroupCache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        GroupCache { dir }
    }

    fn path(dir: &Path, n: u64) -> PathBuf {
        dir.join(format!("unit_group_{n}.json"))
    }

    pub fn unit_group(&self, n: u64) -> Result<Arc<UnitGroup>> {
        let Some(dir) = &self.dir else {
            return Ok(Arc::new(UnitGroup::new(n)?));
        };
        let path = Self::path(dir, n);
        if let Some(g) = fs::read_to_string(&path)
            .ok()
            .and_then(|s| serde_json::from_str::<UnitGroupTable>(&s).ok())
            .and_then(|t| UnitGroup::from_table(&t).ok())
            .filter(|g| g.modulus() == n)
        {
            return Ok(Arc::new(g));
        }
        let g = UnitGroup::new(n)?;
        // A cache that cannot be written is only a missed speedup.
        if fs::create_dir_all(dir).is_ok() {
            if let Ok(s) = serde_json::to_string(&g.to_table()) {
                let tmp = path.with_extension("json.tmp");
                if fs::write(&tmp, s).is_ok() {
                    let _ = fs::rename(&tmp, &path);
                }
            }
        }
        Ok(Arc::new(g))
    }
}
