from pathlib import Path

CONFIGS_DIR = Path(__file__).parent
FIXTURES_DIR = CONFIGS_DIR / 'fixtures'
