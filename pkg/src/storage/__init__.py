"""
파일 형식 입출력 및 보고서 저장 모듈
"""
