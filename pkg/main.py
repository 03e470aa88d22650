# main.py

import importlib
import logging
import sys
from pathlib import Path

import click

# 프로젝트 루트 디렉토리를 Python 경로에 추가
project_root = str(Path(__file__).parent)
if project_root not in sys.path:
    sys.path.append(project_root)

from configs.cli_conf import cli_settings  # noqa: E402

# 로깅 설정 (표준출력은 결과 전용이므로 로그는 stderr)
logging.basicConfig(
    level=cli_settings.LOG_LEVEL,
    format='%(asctime)s [%(levelname)s] %(name)s: %(message)s',
    datefmt='%Y-%m-%d %H:%M:%S',
    stream=sys.stderr
)

logger = logging.getLogger(__name__)


@click.group(name="syntomic-calc")
def cli():
    """스틴로드 대수, PD 환 작용, 복슈타인, F-게이지 계산기"""


def auto_register_commands(group: click.Group, apis_dir: str = "apis") -> None:
    """
    apis 디렉토리의 모든 click 명령을 자동으로 등록

    다른 그룹에 이미 속한 하위 명령은 건너뛴다.

    Args:
        group: 최상위 click 그룹
        apis_dir: 명령 모듈이 있는 디렉토리 경로
    """
    try:
        current_dir = Path(__file__).parent
        apis_path = current_dir / apis_dir

        if not apis_path.exists():
            logger.warning(f"APIs 디렉토리를 찾을 수 없습니다: {apis_path}")
            return

        for python_file in sorted(apis_path.glob("**/*.py")):
            if python_file.name.startswith("_"):
                continue

            # 파일 경로를 모듈 경로로 변환
            module_path = str(python_file.relative_to(current_dir))[:-3].replace("/", ".").replace("\\", ".")

            try:
                module = importlib.import_module(module_path)
                commands = [getattr(module, name) for name in dir(module)]
                commands = [attr for attr in commands if isinstance(attr, click.Command)]
                nested = {id(sub) for attr in commands if isinstance(attr, click.Group)
                          for sub in attr.commands.values()}

                for command in commands:
                    if id(command) in nested or command.name in group.commands:
                        continue
                    group.add_command(command)
                    logger.debug(f"명령 등록 완료: {command.name} ({module_path})")

            except Exception as e:
                logger.error(f"명령 모듈 로드 중 오류 발생 ({module_path}): {str(e)}")
                logger.exception(e)

    except Exception as e:
        logger.error(f"명령 자동 등록 중 오류 발생: {str(e)}")
        logger.exception(e)


# 명령 자동 등록
auto_register_commands(cli)


if __name__ == "__main__":
    cli()
