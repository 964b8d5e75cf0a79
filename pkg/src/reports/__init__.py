"""
명령별 보고서 생성 모듈
"""
