"""Configuration management for the checker."""
import os
import yaml
from pathlib import Path
from typing import Any, Optional, Union
from dotenv import load_dotenv

DEFAULT_CONFIG_PATH = Path(__file__).resolve().parent.parent / "config" / "config.yaml"


class ConfigManager:
    """Manages configuration from YAML and environment variables."""
    
    def __init__(self, config_path: Optional[Union[str, Path]] = None):
        """Initialize configuration manager.
        
        Args:
            config_path: Path to YAML configuration file (defaults to the
                repository's config/config.yaml)
        """
        load_dotenv()
        
        config_file = Path(config_path) if config_path else DEFAULT_CONFIG_PATH
        if not config_file.exists():
            raise FileNotFoundError(f"Config file not found: {config_file}")
        
        with open(config_file, 'r') as f:
            self.config = yaml.safe_load(f) or {}
        
        self._load_env_overrides()
    
    def _load_env_overrides(self):
        """Override config values with HOMCHECK_* environment variables."""
        if os.getenv('HOMCHECK_SEED'):
            self.config['seed'] = int(os.getenv('HOMCHECK_SEED'))
        if os.getenv('HOMCHECK_TOL'):
            self.config['tolerance'] = float(os.getenv('HOMCHECK_TOL'))
        if os.getenv('HOMCHECK_LOG_LEVEL'):
            self.config['log_level'] = os.getenv('HOMCHECK_LOG_LEVEL')
        if os.getenv('HOMCHECK_WORKERS'):
            self.config['fuzz_workers'] = int(os.getenv('HOMCHECK_WORKERS'))
        
        # A journal path from the environment also switches the journal on
        if os.getenv('HOMCHECK_JOURNAL'):
            self.config['journal_path'] = os.getenv('HOMCHECK_JOURNAL')
            self.config['journal_enabled'] = True
    
    def get(self, key: str, default: Any = None) -> Any:
        """Get configuration value.
        
        Args:
            key: Configuration key (supports dot notation, e.g., 'fuzz.workers')
            default: Default value if key not found
            
        Returns:
            Configuration value
        """
        keys = key.split('.')
        value = self.config
        
        for k in keys:
            if isinstance(value, dict):
                value = value.get(k)
                if value is None:
                    return default
            else:
                return default
        
        return value
