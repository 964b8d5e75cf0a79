"""상한 검증 및 동등 분할 분석 모듈"""
