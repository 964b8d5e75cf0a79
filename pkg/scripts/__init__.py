# scripts 패키지

