from src.config.loader import Settings, SettingsLoader, get_loader, load_settings

__all__ = ["Settings", "SettingsLoader", "get_loader", "load_settings"]
